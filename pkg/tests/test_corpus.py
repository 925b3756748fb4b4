import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reportminer.corpus import (Corpus, InvertedIndex, ingest_corpus, load_corpus,
                                lookup, segment_paragraphs, tokenize)
from reportminer.errors import DuplicateDocument, MalformedRecord, StoreError

from conftest import make_corpus


class TestTokenize:
    def test_basic(self):
        assert tokenize("Br Smith wrote.") == ["br", "smith", "wrote"]

    def test_digit_runs(self):
        assert tokenize("1939-45") == ["1939", "45"]

    def test_empty(self):
        assert tokenize("") == []

    def test_punctuation_runs(self):
        assert tokenize("a--b,,c   d") == ["a", "b", "c", "d"]

    @given(st.text(max_size=200))
    @settings(max_examples=100, deadline=None)
    def test_tokens_are_lowercase_alnum(self, text):
        for tok in tokenize(text):
            assert tok == tok.lower()
            assert tok
            assert all(ch.isalnum() for ch in tok)

    @given(st.text(max_size=200))
    @settings(max_examples=100, deadline=None)
    def test_idempotent_over_join(self, text):
        toks = tokenize(text)
        assert tokenize(" ".join(toks)) == toks


class TestSegmentParagraphs:
    def test_empty_input(self):
        assert segment_paragraphs("") == []

    def test_two_blocks(self):
        assert segment_paragraphs("A.\n\nB.") == [(None, "A."), (None, "B.")]

    def test_blank_lines_with_spaces(self):
        assert segment_paragraphs("A.\n  \n\t\nB.") == [(None, "A."), (None, "B.")]

    def test_ryan_labels_captured(self):
        blocks = "\n\n".join(f"7.{i:02d} Paragraph number {i}." for i in range(1, 13))
        out = segment_paragraphs(blocks)
        assert len(out) == 12
        assert [r for r, _ in out] == [f"7.{i:02d}" for i in range(1, 13)]
        assert all(not t.startswith("7.") for _, t in out)

    def test_label_only_block_dropped(self):
        assert segment_paragraphs("7.01   \n\nreal text") == [(None, "real text")]

    def test_never_empty_text(self):
        out = segment_paragraphs("\n\n  \n\nx\n\n   \n\n")
        assert out == [(None, "x")]

    @given(st.lists(st.text(alphabet="abc XY.7", max_size=30), max_size=8))
    @settings(max_examples=100, deadline=None)
    def test_no_empty_paragraphs(self, blocks):
        for _, text in segment_paragraphs("\n\n".join(blocks)):
            assert text.strip() == text
            assert text


class TestIngest:
    def test_two_block_document(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d1", 0, "First block.\n\nSecond block.")])
        assert corpus.stats.paragraph_count == 2
        assert [p.ordinal for p in corpus.paragraphs] == [0, 1]
        assert corpus.paragraphs[0].para_id == "d1:0000"

    def test_duplicate_doc_id(self, tmp_path):
        lines = [json.dumps({"doc_id": "d", "title": "t", "chapter_no": 0, "text": "x"})] * 2
        with pytest.raises(DuplicateDocument):
            ingest_corpus(lines, tmp_path / "store")

    def test_malformed_record_names_line(self, tmp_path):
        lines = [json.dumps({"doc_id": "a", "title": "t", "chapter_no": 0, "text": "x"}),
                 "{not json"]
        with pytest.raises(MalformedRecord, match="line 2"):
            ingest_corpus(lines, tmp_path / "store")

    def test_missing_field_names_line(self, tmp_path):
        with pytest.raises(MalformedRecord, match="line 1"):
            ingest_corpus([json.dumps({"doc_id": "a"})], tmp_path / "store")

    def test_tokens_match_tokenize(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d1", 0, "Some TEXT here.\n\nMore 1953 text.")])
        for p in corpus.paragraphs:
            assert list(p.tokens) == tokenize(p.text)

    def test_fixture_stats_match_manifest(self, corpus, manifest):
        assert corpus.stats.paragraph_count == manifest["counts"]["paragraphs"]
        assert corpus.stats.token_count == manifest["counts"]["tokens"]

    def test_determinism(self, tmp_path):
        docs = [("d1", 1, "Alpha beta.\n\n7.02 Gamma delta."), ("d2", 2, "Epsilon.")]
        c1 = make_corpus(tmp_path / "a", docs)
        c2 = make_corpus(tmp_path / "b", docs)
        assert c1.stats == c2.stats
        assert [p.para_id for p in c1.paragraphs] == [p.para_id for p in c2.paragraphs]

    def test_round_trip(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d1", 3, "7.01 One two.\n\nThree four.")])
        reloaded = load_corpus(tmp_path / "store")
        assert [p.__dict__ for p in reloaded.paragraphs] == \
               [p.__dict__ for p in corpus.paragraphs]
        assert reloaded.index.postings == corpus.index.postings
        assert reloaded.stats == corpus.stats

    def test_corrupt_store_names_file(self, tmp_path):
        corpus_dir = tmp_path / "store"
        make_corpus(tmp_path, [("d1", 0, "hello world")])
        (corpus_dir / "corpus.meta").write_text("{broken", encoding="utf-8")
        with pytest.raises(StoreError, match="corpus.meta"):
            load_corpus(corpus_dir)


class TestIndex:
    def test_lookup_present(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "cat dog.\n\nbird.\n\ncat bird.")])
        assert lookup(corpus.index, "cat") == ["d:0000", "d:0002"]
        assert lookup(corpus.index, "bird") == ["d:0001", "d:0002"]

    def test_unknown_token(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "cat")])
        assert lookup(corpus.index, "zzz") == []

    def test_index_equals_linear_scan(self, corpus):
        for token in list(corpus.index.postings)[::7]:
            scan = [p.para_id for p in corpus.paragraphs if token in p.tokens]
            assert lookup(corpus.index, token) == sorted(scan)

    def test_full_membership_oracle(self, corpus):
        # both directions: every token of every paragraph is indexed, and every
        # posting really contains its token
        for p in corpus.paragraphs:
            for tok in set(p.tokens):
                assert p.para_id in corpus.index.postings[tok]
        for tok, ids in corpus.index.postings.items():
            assert ids == sorted(ids)
            assert len(set(ids)) == len(ids)
            for pid in ids:
                assert tok in corpus.paragraph(pid).tokens

    def test_postings_sorted_and_unique(self):
        index = InvertedIndex.build([])
        assert index.postings == {}
