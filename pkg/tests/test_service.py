import pytest
from fastapi.testclient import TestClient

from reportminer import store as store_mod
from reportminer.corpus import tokenize
from reportminer.networks import graph_to_dict, load_graph
from reportminer.service import SearchQuery, create_app, mark_snippet, search, load_app_data
from reportminer.store import hash_tree


@pytest.fixture(scope="module")
def app_data(pipeline_store):
    return load_app_data(pipeline_store)


@pytest.fixture(scope="module")
def client(pipeline_store):
    return TestClient(create_app(pipeline_store))


def linear_scan(data, q=None, label=None, entity=None, chapter=None):
    """Independent full-scan re-implementation of the search contract."""
    q_tokens = tokenize(q) if q is not None else None
    out = []
    for p in data.corpus.paragraphs:
        if q_tokens is not None and not all(t in p.tokens for t in q_tokens):
            continue
        if label is not None:
            labels = {a.label for a in data.labels_by_para.get(p.para_id, [])}
            if label not in labels:
                continue
        if entity is not None:
            ents = {m.canonical_id
                    for m in (data.mentions_by_para or {}).get(p.para_id, [])}
            if entity not in ents:
                continue
        if chapter is not None and data.corpus.documents[p.doc_id].chapter_no != chapter:
            continue
        out.append(p.para_id)
    out.sort(key=lambda pid: (data.corpus.documents[data.corpus.paragraph(pid).doc_id]
                              .chapter_no, data.corpus.paragraph(pid).ordinal))
    return out


class TestSearchFunction:
    def test_empty_query_rejected(self, app_data):
        from reportminer.errors import EmptyQuery

        with pytest.raises(EmptyQuery):
            search(app_data, SearchQuery())

    def test_token_query_equals_scan(self, app_data):
        got = search(app_data, SearchQuery(q="transferred", page_size=200))
        want = linear_scan(app_data, q="transferred")
        assert [h["para_id"] for h in got["hits"]] == want
        assert got["total"] == len(want)

    def test_conjunctive_and(self, app_data):
        got = search(app_data, SearchQuery(q="transferred artane", page_size=200))
        want = linear_scan(app_data, q="transferred artane")
        assert [h["para_id"] for h in got["hits"]] == want

    def test_label_only(self, app_data):
        got = search(app_data, SearchQuery(label="transfer", page_size=200))
        assert [h["para_id"] for h in got["hits"]] == linear_scan(app_data,
                                                                  label="transfer")

    def test_nothing_matches(self, app_data):
        got = search(app_data, SearchQuery(q="zzzznotatoken"))
        assert got["total"] == 0
        assert got["hits"] == []

    def test_snippet_marks_matches(self, app_data):
        got = search(app_data, SearchQuery(q="transferred", page_size=1))
        assert "[[transferred]]" in got["hits"][0]["snippet"]

    def test_mark_snippet_case_preserving(self):
        assert mark_snippet("The Letter came", {"letter"}) == "The [[Letter]] came"

    def test_pagination_disjoint_and_complete(self, app_data):
        full = linear_scan(app_data, q="the")
        assert len(full) > 25
        seen = []
        page = 1
        while True:
            got = search(app_data, SearchQuery(q="the", page=page, page_size=10))
            assert got["total"] == len(full)
            if not got["hits"]:
                break
            seen.extend(h["para_id"] for h in got["hits"])
            page += 1
        assert seen == full

    def test_bad_page_size(self, app_data):
        with pytest.raises(ValueError):
            search(app_data, SearchQuery(q="x", page_size=0))
        with pytest.raises(ValueError):
            search(app_data, SearchQuery(q="x", page_size=201))


class TestEndpoints:
    def test_stats(self, client, corpus):
        body = client.get("/api/stats").json()
        assert body == {"paragraph_count": corpus.stats.paragraph_count,
                        "token_count": corpus.stats.token_count,
                        "vocab_size": corpus.stats.vocab_size}

    def test_search_endpoint_matches_function(self, client, app_data):
        resp = client.get("/api/paragraphs", params={"q": "beatings", "page_size": 200})
        assert resp.status_code == 200
        want = search(app_data, SearchQuery(q="beatings", page_size=200))
        assert resp.json() == want

    def test_search_requires_filter(self, client):
        resp = client.get("/api/paragraphs")
        assert resp.status_code == 400
        body = resp.json()
        assert body["error"] == "empty_query"
        assert "detail" in body

    def test_malformed_chapter_is_400(self, client):
        resp = client.get("/api/paragraphs", params={"chapter": "notanint"})
        assert resp.status_code == 400
        assert resp.json()["error"] == "bad_request"

    def test_paragraph_detail(self, client, corpus, store_mentions):
        pid = store_mentions[0].para_id
        body = client.get(f"/api/paragraphs/{pid}").json()
        assert body["para_id"] == pid
        assert body["text"] == corpus.paragraph(pid).text
        assert body["mentions"]
        for m in body["mentions"]:
            assert body["text"][m["start"]:m["end"]] == m["surface"]

    def test_paragraph_404(self, client):
        resp = client.get("/api/paragraphs/nope:9999")
        assert resp.status_code == 404

    def test_entities_list_and_filter(self, client):
        body = client.get("/api/entities", params={"page_size": 200}).json()
        assert body["total"] >= 15
        persons = client.get("/api/entities",
                             params={"type": "PERSON", "page_size": 200}).json()
        assert all(e["entity_type"] == "PERSON" for e in persons["entities"])

    def test_entity_detail_and_404(self, client):
        body = client.get("/api/entities/br_pierre").json()
        assert body["canonical_id"] == "br_pierre"
        assert body["mention_count"] >= 1
        assert client.get("/api/entities/nobody_here").status_code == 404

    def test_timeline_ordered(self, client, corpus):
        body = client.get("/api/entities/br_pierre/timeline").json()
        hops = body["hops"]
        assert hops
        keys = [(corpus.documents[h["doc_id"]].chapter_no, h["ordinal"]) for h in hops]
        assert keys == sorted(keys)

    def test_network_min_weight_passthrough(self, client, pipeline_store):
        graph = load_graph(pipeline_store / store_mod.GRAPHS_DIR / "collocation.json")
        for mw in (1, 2, 3):
            body = client.get("/api/networks/collocation",
                              params={"min_weight": mw}).json()
            assert body == graph_to_dict(graph, min_weight=mw)

    def test_rules_threshold_filter(self, client):
        everything = client.get("/api/rules/transfers").json()["rules"]
        strict = client.get("/api/rules/transfers",
                            params={"min_confidence": 0.9}).json()["rules"]
        assert len(strict) <= len(everything)
        assert all(r["confidence"] >= 0.9 for r in strict)

    def test_flows(self, client, manifest):
        body = client.get("/api/transfers/flows").json()
        want = {}
        for ev in manifest["transfers"]["events"]:
            if ev["from_institution"] and ev["to_institution"]:
                key = (ev["from_institution"], ev["to_institution"])
                want[key] = want.get(key, 0) + 1
        got = {(f["from"], f["to"]): f["count"] for f in body["flows"]}
        assert got == want

    def test_lexicons(self, client):
        body = client.get("/api/lexicons").json()
        names = {lx["name"] for lx in body["lexicons"]}
        assert "communication" in names
        detail = client.get("/api/lexicons/communication").json()
        assert set(detail["seed_terms"]) == {"letter", "meeting", "telephone",
                                             "wrote", "visited"}
        assert client.get("/api/lexicons/nope").status_code == 404

    def test_cors_header(self, client):
        resp = client.get("/api/stats", headers={"Origin": "http://example.test"})
        assert resp.headers.get("access-control-allow-origin") == "*"

    def test_missing_artifact_endpoints_404(self, tmp_path):
        from conftest import make_corpus

        make_corpus(tmp_path, [("d", 0, "bare corpus only")])
        bare = TestClient(create_app(tmp_path / "store"))
        for path in ("/api/networks/collocation", "/api/networks/communication",
                     "/api/rules/transfers", "/api/transfers/flows", "/api/lexicons",
                     "/api/entities"):
            resp = bare.get(path)
            assert resp.status_code == 404, path
            assert resp.json()["error"] == "artifact_missing"

    def test_corrupt_store_startup_error_names_file(self, tmp_path):
        from conftest import make_corpus
        from reportminer.errors import StoreError

        make_corpus(tmp_path, [("d", 0, "x")])
        (tmp_path / "store" / "paragraphs.jsonl").write_text("{broken\n")
        with pytest.raises(StoreError, match="paragraphs.jsonl"):
            create_app(tmp_path / "store")

    def test_session_never_mutates_store(self, client, pipeline_store):
        before = hash_tree(pipeline_store)
        client.get("/api/stats")
        client.get("/api/paragraphs", params={"q": "the"})
        client.get("/api/entities")
        assert hash_tree(pipeline_store) == before
