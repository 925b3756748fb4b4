import pytest

from reportminer.corpus import Paragraph
from reportminer.entities import (Entity, EntityMention, GazetteerEntry, GazetteerIndex,
                                  build_registry, dominant_entity_types, entity_timeline,
                                  extract_all_mentions, load_gazetteer, load_mentions,
                                  load_title_rules, recognize_entities, save_mentions)
from reportminer.errors import UnknownEntity

from conftest import make_corpus

TITLES = ["Br", "Fr", "Sr"]


def para(text, para_id="d:0000"):
    from reportminer.corpus import tokenize

    return Paragraph(para_id=para_id, doc_id="d", ordinal=0, ryan_number=None,
                     text=text, tokens=tuple(tokenize(text)))


def gaz(*rows):
    return [GazetteerEntry(surface=s, entity_type=t, canonical_id=c) for s, t, c in rows]


class TestRecognize:
    def test_title_rule_and_gazetteer(self):
        mentions = recognize_entities(
            para("Br Smith visited Artane"),
            gaz(("Artane", "INSTITUTION", "artane")), TITLES)
        assert [(m.surface, m.entity_type, m.canonical_id) for m in mentions] == \
            [("Br Smith", "PERSON", "br_smith"), ("Artane", "INSTITUTION", "artane")]

    def test_longest_match_wins(self):
        g = gaz(("St Joseph", "INSTITUTION", "st_joseph"),
                ("St Joseph's School", "INSTITUTION", "st_josephs_school"))
        [m] = recognize_entities(para("They went to St Joseph's School today"), g, [])
        assert m.canonical_id == "st_josephs_school"
        assert m.surface == "St Joseph's School"

    def test_shorter_surface_still_matches_alone(self):
        g = gaz(("St Joseph", "INSTITUTION", "st_joseph"),
                ("St Joseph's School", "INSTITUTION", "st_josephs_school"))
        [m] = recognize_entities(para("They went to St Joseph today"), g, [])
        assert m.canonical_id == "st_joseph"

    def test_case_insensitive_gazetteer(self):
        [m] = recognize_entities(para("reports from ARTANE continued"),
                                 gaz(("Artane", "INSTITUTION", "artane")), [])
        assert m.surface == "ARTANE"
        assert m.canonical_id == "artane"

    def test_spans_slice_to_surface(self, corpus, manifest):
        gazetteer = [GazetteerEntry(**row) for row in manifest["gazetteer"]]
        index = GazetteerIndex(gazetteer)
        for p in corpus.paragraphs[::5]:
            for m in recognize_entities(p, index, manifest["title_rules"]):
                assert p.text[m.start:m.end] == m.surface

    def test_no_overlaps(self, corpus, manifest):
        gazetteer = [GazetteerEntry(**row) for row in manifest["gazetteer"]]
        index = GazetteerIndex(gazetteer)
        for p in corpus.paragraphs:
            spans = [(m.start, m.end) for m in recognize_entities(
                p, index, manifest["title_rules"])]
            for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
                assert e1 <= s2

    def test_title_takes_up_to_two_capitalized_words(self):
        [m] = recognize_entities(para("He spoke with Fr John Murphy about it"), [], TITLES)
        assert m.surface == "Fr John Murphy"
        assert m.canonical_id == "fr_john_murphy"

    def test_title_without_capitalized_word_is_ignored(self):
        assert recognize_entities(para("the br was quiet"), [], TITLES) == []

    def test_gazetteer_beats_title_rule_on_overlap(self):
        g = gaz(("Br Pierre", "PERSON", "pierre_canonical"))
        [m] = recognize_entities(para("Then Br Pierre arrived"), g, TITLES)
        assert m.canonical_id == "pierre_canonical"

    def test_gazetteer_order_does_not_matter(self):
        rows = [("Artane", "INSTITUTION", "artane"),
                ("Br Pierre", "PERSON", "br_pierre"),
                ("Department of Education", "ORGANIZATION", "dept")]
        text = "Br Pierre of the Department of Education visited Artane quietly"
        a = recognize_entities(para(text), gaz(*rows), TITLES)
        b = recognize_entities(para(text), gaz(*rows[::-1]), TITLES)
        assert a == b

    def test_fixture_recognition_is_exact(self, corpus, manifest):
        gazetteer = [GazetteerEntry(**row) for row in manifest["gazetteer"]]
        mentions = extract_all_mentions(corpus, gazetteer, manifest["title_rules"])
        got: dict[str, list[dict]] = {}
        for m in mentions:
            got.setdefault(m.para_id, []).append(
                {"start": m.start, "end": m.end, "surface": m.surface,
                 "entity_type": m.entity_type, "canonical_id": m.canonical_id})
        assert got == manifest["mentions"]


class TestRegistry:
    def test_aggregates_across_documents(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d1", 1, "Br Foo was here."),
                                        ("d2", 2, "Later Br Foo left.")])
        mentions = extract_all_mentions(corpus, [], TITLES)
        registry = build_registry(corpus, mentions)
        entity = registry.entities["br_foo"]
        assert entity.mention_count == 2
        assert entity.documents == ("d1", "d2")

    def test_empty_registry(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d1", 1, "nothing here")])
        registry = build_registry(corpus, [])
        assert registry.entities == {}

    def test_equals_group_by_oracle(self, corpus, store_mentions):
        registry = build_registry(corpus, store_mentions)
        groups: dict[str, list] = {}
        for m in store_mentions:
            groups.setdefault(m.canonical_id, []).append(m)
        assert set(registry.entities) == set(groups)
        for cid, ms in groups.items():
            entity = registry.entities[cid]
            assert entity.mention_count == len(ms)
            assert set(entity.documents) == {corpus.paragraph(m.para_id).doc_id
                                             for m in ms}

    def test_counts_match_full_recount(self, corpus, store_mentions):
        registry = build_registry(corpus, store_mentions)
        total = sum(e.mention_count for e in registry.entities.values())
        assert total == len(store_mentions)


class TestTimeline:
    def test_orders_by_ordinal(self, tmp_path):
        text = "\n\n".join(["pad"] * 2 + ["Br Foo again."] + ["pad"] * 2
                           + ["Br Foo once more."])
        corpus = make_corpus(tmp_path, [("d1", 1, "Br Foo first."), ("d2", 2, text)])
        registry = build_registry(corpus, extract_all_mentions(corpus, [], TITLES))
        hops = entity_timeline(registry, "br_foo")
        assert [(h["doc_id"], h["ordinal"]) for h in hops] == \
            [("d1", 0), ("d2", 2), ("d2", 5)]

    def test_unknown_entity(self, corpus, store_mentions):
        registry = build_registry(corpus, store_mentions)
        with pytest.raises(UnknownEntity):
            entity_timeline(registry, "no_such_entity")

    def test_fixture_timeline_matches_mention_order(self, corpus, store_mentions):
        registry = build_registry(corpus, store_mentions)
        cid = max(registry.entities.values(), key=lambda e: len(e.documents)).canonical_id
        assert len(registry.entities[cid].documents) >= 3
        hops = entity_timeline(registry, cid)
        keys = [(corpus.documents[h["doc_id"]].chapter_no, h["ordinal"]) for h in hops]
        assert keys == sorted(keys)
        assert len(hops) == registry.entities[cid].mention_count


class TestIO:
    def test_gazetteer_csv_round_trip(self, tmp_path, manifest):
        path = tmp_path / "gaz.csv"
        import csv

        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["surface", "entity_type", "canonical_id"])
            for row in manifest["gazetteer"]:
                writer.writerow([row["surface"], row["entity_type"],
                                 row["canonical_id"]])
        entries = load_gazetteer(path)
        assert [e.surface for e in entries] == [r["surface"] for r in manifest["gazetteer"]]

    def test_title_rules_file(self, tmp_path):
        path = tmp_path / "titles.txt"
        path.write_text("Br\n\nFr\n  Sr  \n")
        assert load_title_rules(path) == ["Br", "Fr", "Sr"]

    def test_mentions_round_trip(self, tmp_path, store_mentions):
        path = tmp_path / "mentions.jsonl"
        save_mentions(store_mentions, path)
        assert load_mentions(path) == store_mentions

    def test_dominant_type_tie_breaks(self):
        mentions = [EntityMention("p", 0, 1, "x", "PLACE", "x"),
                    EntityMention("p", 2, 3, "x", "INSTITUTION", "x")]
        assert dominant_entity_types(mentions) == {"x": "INSTITUTION"}
