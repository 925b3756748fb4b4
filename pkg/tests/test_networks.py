from itertools import combinations

from reportminer.corpus import tokenize
from reportminer.embedding import Lexicon
from reportminer.entities import EntityMention
from reportminer.networks import (CommunicationExcerpt, Graph,
                                  build_collocation_network,
                                  build_communication_network, degree_centrality,
                                  extract_communications, graph_to_dict, load_graph,
                                  write_graph_json)

from conftest import make_corpus


def mention(para_id, cid, etype="PERSON", start=0):
    return EntityMention(para_id=para_id, start=start, end=start + 1, surface=cid,
                         entity_type=etype, canonical_id=cid)


def brute_force_graph(per_para_ids):
    """Independent per-paragraph pair counting (the spec's oracle)."""
    edges: dict[tuple[str, str], list[str]] = {}
    for para_id, ids in per_para_ids:
        for a, b in combinations(sorted(set(ids)), 2):
            edges.setdefault((a, b), []).append(para_id)
    return {k: sorted(v) for k, v in edges.items()}


class TestCollocation:
    def test_triangle_from_one_paragraph(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "x y z together")])
        mentions = [mention("d:0000", c, start=i * 2) for i, c in enumerate("xyz")]
        graph = build_collocation_network(corpus, mentions)
        assert {k: len(v) for k, v in graph.edges.items()} == {
            ("x", "y"): 1, ("x", "z"): 1, ("y", "z"): 1}

    def test_repeat_comention_counts_once_per_paragraph(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "one.\n\ntwo.")])
        mentions = [mention("d:0000", "x"), mention("d:0000", "y", start=5),
                    mention("d:0000", "x", start=9),
                    mention("d:0001", "x"), mention("d:0001", "y", start=5)]
        graph = build_collocation_network(corpus, mentions)
        assert graph.edges == {("x", "y"): ["d:0000", "d:0001"]}

    def test_equals_brute_force_on_fixture(self, corpus, store_mentions):
        graph = build_collocation_network(corpus, store_mentions)
        per_para: dict[str, list[str]] = {}
        for m in store_mentions:
            per_para.setdefault(m.para_id, []).append(m.canonical_id)
        expected = brute_force_graph(sorted(per_para.items()))
        assert graph.edges == expected

    def test_evidence_paragraphs_mention_both_endpoints(self, corpus, store_mentions):
        graph = build_collocation_network(corpus, store_mentions)
        by_para: dict[str, set[str]] = {}
        for m in store_mentions:
            by_para.setdefault(m.para_id, set()).add(m.canonical_id)
        for (a, b), evidence in graph.edges.items():
            for pid in evidence:
                assert a in by_para[pid] and b in by_para[pid]

    def test_insensitive_to_mention_order(self, corpus, store_mentions):
        forward = build_collocation_network(corpus, store_mentions)
        backward = build_collocation_network(corpus, store_mentions[::-1])
        assert forward.edges == backward.edges
        assert forward.nodes == backward.nodes


class TestCommunications:
    def test_flagging(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "a letter came.\n\nplain text here.")])
        lexicon = Lexicon(name="comm", seed_terms=set(), terms={"letter"})
        excerpts = extract_communications(corpus, lexicon, [mention("d:0000", "x")])
        assert len(excerpts) == 1
        assert excerpts[0].para_id == "d:0000"
        assert "letter" in excerpts[0].matched_terms
        assert excerpts[0].participants == ("x",)

    def test_unflagged_paragraph_excluded(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "no terms at all")])
        lexicon = Lexicon(name="comm", seed_terms=set(), terms={"letter"})
        assert extract_communications(corpus, lexicon, []) == []

    def test_flagged_set_equals_linear_scan(self, corpus, manifest, store_mentions):
        lexicon = Lexicon(name="comm", seed_terms=set(),
                          terms=set(manifest["communication"]["vocab"]))
        excerpts = extract_communications(corpus, lexicon, store_mentions)
        got = {e.para_id for e in excerpts}
        want = {p.para_id for p in corpus.paragraphs
                if set(p.tokens) & lexicon.terms}
        assert got == want
        assert want  # fixture must actually contain communications

    def test_single_participant_contributes_nothing(self):
        excerpts = [CommunicationExcerpt("p1", ("letter",), ("x",)),
                    CommunicationExcerpt("p2", ("memo",), ("x", "y"))]
        graph = build_communication_network(excerpts)
        assert graph.edges == {("x", "y"): ["p2"]}
        assert set(graph.nodes) == {"x", "y"}

    def test_network_equals_brute_force(self, corpus, manifest, store_mentions):
        lexicon = Lexicon(name="comm", seed_terms=set(),
                          terms=set(manifest["communication"]["vocab"]))
        excerpts = extract_communications(corpus, lexicon, store_mentions)
        graph = build_communication_network(excerpts)
        expected = brute_force_graph(
            (e.para_id, list(e.participants)) for e in excerpts
            if len(e.participants) >= 2)
        assert graph.edges == expected


class TestDegreeCentrality:
    def test_triangle(self):
        graph = Graph(nodes={c: "PERSON" for c in "abc"},
                      edges={("a", "b"): ["p"], ("a", "c"): ["q"], ("b", "c"): ["r"]})
        assert degree_centrality(graph) == {"a": (2, 2), "b": (2, 2), "c": (2, 2)}

    def test_star(self):
        edges = {("c", f"l{i}"): ["p"] for i in range(4)}
        graph = Graph(nodes={"c": "PERSON", **{f"l{i}": "PERSON" for i in range(4)}},
                      edges={tuple(sorted(k)): v for k, v in edges.items()})
        cent = degree_centrality(graph)
        assert cent["c"] == (4, 4)
        assert all(cent[f"l{i}"] == (1, 1) for i in range(4))

    def test_degree_sums(self, corpus, store_mentions):
        graph = build_collocation_network(corpus, store_mentions)
        cent = degree_centrality(graph)
        assert sum(d for d, _ in cent.values()) == 2 * graph.edge_count
        assert sum(w for _, w in cent.values()) == 2 * graph.total_weight

    def test_equals_brute_force_incidence(self, corpus, store_mentions):
        graph = build_collocation_network(corpus, store_mentions)
        cent = degree_centrality(graph)
        for node in graph.nodes:
            incident = [(k, len(ev)) for k, ev in graph.edges.items() if node in k]
            assert cent[node] == (len(incident), sum(w for _, w in incident))


class TestExport:
    def test_min_weight_filters_edges(self):
        graph = Graph(nodes={"a": "X", "b": "X", "c": "X"},
                      edges={("a", "b"): ["p", "q"], ("a", "c"): ["r"]})
        full = graph_to_dict(graph, min_weight=1)
        filtered = graph_to_dict(graph, min_weight=2)
        assert len(full["edges"]) == 2
        assert len(filtered["edges"]) == 1
        assert [n["id"] for n in filtered["nodes"]] == ["a", "b"]

    def test_round_trip(self, tmp_path, corpus, store_mentions):
        graph = build_collocation_network(corpus, store_mentions)
        write_graph_json(graph, tmp_path / "g.json")
        loaded = load_graph(tmp_path / "g.json")
        assert loaded.edges == graph.edges
        assert loaded.nodes == graph.nodes
