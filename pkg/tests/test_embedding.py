import numpy as np
import pytest

from reportminer.embedding import (EmbeddingConfig, EmbeddingModel, LexiconConfig,
                                   cosine_similarity, expand_lexicon, load_lexicon,
                                   load_model, nearest_neighbors, save_lexicon,
                                   save_model, sgns_loss_and_grads, train_embedding,
                                   train_ensemble)
from reportminer.errors import EmptyVocabulary, UnknownSeed, UnknownTerm, ZeroVector

from conftest import make_corpus

TINY_CFG = EmbeddingConfig(dim=16, window=2, negatives=3, epochs=3, min_count=1,
                           rng_seed=11)


def central_difference_grads(center, context, negatives, h=1e-5):
    """Finite-difference oracle for the per-sample loss."""
    def loss():
        return sgns_loss_and_grads(center, context, negatives)[0]

    grads = []
    for arr in (center, context, negatives):
        g = np.zeros_like(arr)
        it = np.nditer(arr, flags=["multi_index"])
        while not it.finished:
            idx = it.multi_index
            orig = arr[idx]
            arr[idx] = orig + h
            up = loss()
            arr[idx] = orig - h
            down = loss()
            arr[idx] = orig
            g[idx] = (up - down) / (2 * h)
            it.iternext()
        grads.append(g)
    return grads


def relative_error(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(a) + np.linalg.norm(b), 1e-12)


class TestGradients:
    def test_matches_finite_differences_on_toy_model(self):
        rng = np.random.default_rng(3)
        dim = 6
        center = rng.normal(0, 0.5, dim)
        context = rng.normal(0, 0.5, dim)
        negatives = rng.normal(0, 0.5, (10, dim))
        _, gc, gx, gn = sgns_loss_and_grads(center, context, negatives)
        nc, nx, nn = central_difference_grads(center, context, negatives)
        assert relative_error(gc, nc) <= 1e-4
        assert relative_error(gx, nx) <= 1e-4
        assert relative_error(gn, nn) <= 1e-4

    def test_loss_is_positive_and_finite(self):
        rng = np.random.default_rng(5)
        loss, *_ = sgns_loss_and_grads(rng.normal(size=4), rng.normal(size=4),
                                       rng.normal(size=(2, 4)))
        assert np.isfinite(loss) and loss > 0


class TestCosine:
    def test_parallel(self):
        assert cosine_similarity([1.0, 0.0], [1.0, 0.0]) == pytest.approx(1.0)

    def test_orthogonal(self):
        assert cosine_similarity([1.0, 0.0], [0.0, 1.0]) == pytest.approx(0.0)

    def test_analytic_45_degrees(self):
        assert cosine_similarity([1.0, 1.0], [1.0, 0.0]) == \
               pytest.approx(0.70710678, abs=1e-8)

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            cosine_similarity([0.0, 0.0], [1.0, 0.0])

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            cosine_similarity([1.0], [1.0, 2.0])


def hand_model(vectors: dict) -> EmbeddingModel:
    vocab = sorted(vectors)
    mat = np.array([vectors[t] for t in vocab], dtype=float)
    return EmbeddingModel(vocab, mat, np.zeros_like(mat),
                          EmbeddingConfig(dim=mat.shape[1]))


class TestNearestNeighbors:
    def test_hand_set_model(self):
        model = hand_model({"a": (1, 0), "b": (0.9, 0.1), "c": (0, 1)})
        [(tok, score)] = nearest_neighbors(model, "a", 1)
        assert tok == "b"
        assert score == pytest.approx(0.9 / np.hypot(0.9, 0.1), abs=1e-9)

    def test_n_larger_than_vocab(self):
        model = hand_model({"a": (1, 0), "b": (0, 1), "c": (1, 1)})
        out = nearest_neighbors(model, "a", 10)
        assert [t for t, _ in out] == ["c", "b"]

    def test_unknown_term(self):
        model = hand_model({"a": (1, 0)})
        with pytest.raises(UnknownTerm):
            nearest_neighbors(model, "zzz", 1)

    def test_ties_break_lexicographically(self):
        model = hand_model({"q": (1, 0), "x": (2, 0), "m": (3, 0), "b": (4, 0)})
        out = nearest_neighbors(model, "q", 3)
        assert [t for t, _ in out] == ["b", "m", "x"]

    def test_equals_brute_force_on_trained_model(self, ensemble):
        model = ensemble[0]
        rng = np.random.default_rng(0)
        for term in rng.choice(model.vocab, size=5, replace=False):
            got = nearest_neighbors(model, term, 12)
            query = model.vector(term)
            brute = sorted(
                ((tok, cosine_similarity(model.input_vectors[i], query))
                 for i, tok in enumerate(model.vocab) if tok != term),
                key=lambda ts: (-ts[1], ts[0]))[:12]
            assert got == brute


class TestTraining:
    def test_empty_vocabulary(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "one two three")])
        with pytest.raises(EmptyVocabulary):
            train_embedding(corpus, EmbeddingConfig(min_count=5))

    def test_deterministic(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "a b c a b c d e.\n\na c e b d.")])
        m1 = train_embedding(corpus, TINY_CFG)
        m2 = train_embedding(corpus, TINY_CFG)
        assert np.array_equal(m1.input_vectors, m2.input_vectors)
        assert np.array_equal(m1.output_vectors, m2.output_vectors)
        assert m1.vocab == m2.vocab

    def test_min_count_filters_vocab(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "a a a b b c")])
        model = train_embedding(corpus, EmbeddingConfig(
            dim=4, epochs=1, min_count=2, rng_seed=0))
        assert set(model.vocab) == {"a", "b"}

    def test_loss_declines_on_fixture(self, ensemble):
        for model in ensemble:
            assert model.epoch_losses[-1] < model.epoch_losses[0]

    def test_ensemble_members_differ(self, ensemble):
        for other in ensemble[1:]:
            assert not np.array_equal(ensemble[0].input_vectors, other.input_vectors)

    def test_ensemble_k1_equals_single_model(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "a b c d e a b c d e.\n\nc d e a b.")])
        lexcfg = LexiconConfig(seed_terms=("a",), ensemble_count=1)
        [member] = train_ensemble(corpus, TINY_CFG, lexcfg)
        single = train_embedding(corpus, TINY_CFG)
        assert np.array_equal(member.input_vectors, single.input_vectors)

    def test_ensemble_deterministic(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "a b c d e a b c d e.\n\nc d e a b.")])
        lexcfg = LexiconConfig(seed_terms=("a",), ensemble_count=3)
        e1 = train_ensemble(corpus, TINY_CFG, lexcfg)
        e2 = train_ensemble(corpus, TINY_CFG, lexcfg)
        for m1, m2 in zip(e1, e2):
            assert np.array_equal(m1.input_vectors, m2.input_vectors)
            assert np.array_equal(m1.output_vectors, m2.output_vectors)


class TestLexicon:
    def test_single_member_top2(self):
        model = hand_model({"s": (1.0, 0.0), "x": (0.9, 0.1), "y": (0.8, 0.3),
                            "z": (0.0, 1.0)})
        lex = expand_lexicon([model], LexiconConfig(seed_terms=("s",), ensemble_count=1,
                                                    top_n=2), name="t")
        assert lex.terms == {"s", "x", "y"}

    def test_two_member_intersection(self):
        m1 = hand_model({"s": (1, 0), "x": (0.95, 0.1), "y": (0.9, 0.2), "z": (0, 1)})
        m2 = hand_model({"s": (1, 0), "y": (0.95, 0.1), "z": (0.9, 0.2), "x": (0, 1)})
        lex = expand_lexicon([m1, m2], LexiconConfig(seed_terms=("s",), ensemble_count=2,
                                                     top_n=2), name="t")
        assert lex.terms == {"s", "y"}

    def test_include_seeds_false(self):
        model = hand_model({"s": (1, 0), "x": (0.9, 0.1), "z": (0, 1)})
        lex = expand_lexicon([model], LexiconConfig(seed_terms=("s",), ensemble_count=1,
                                                    top_n=1, include_seeds=False),
                             name="t")
        assert lex.terms == {"x"}

    def test_unknown_seed_names_member(self):
        model = hand_model({"a": (1, 0), "b": (0, 1)})
        with pytest.raises(UnknownSeed, match="member 0"):
            expand_lexicon([model], LexiconConfig(seed_terms=("nope",)), name="t")

    def test_provenance_ranks(self):
        model = hand_model({"s": (1, 0), "x": (0.9, 0.1), "y": (0.8, 0.3), "z": (0, 1)})
        lex = expand_lexicon([model], LexiconConfig(seed_terms=("s",), ensemble_count=1,
                                                    top_n=3), name="t")
        assert lex.provenance["x"] == [{"seed": "s", "ranks": [1]}]
        assert lex.provenance["y"] == [{"seed": "s", "ranks": [2]}]

    def test_consensus_monotone_in_members(self, ensemble, manifest):
        seeds = tuple(manifest["clusters"]["a"]["seed_terms"])
        previous = None
        for k in range(1, len(ensemble) + 1):
            cfg = LexiconConfig(seed_terms=seeds, ensemble_count=k, top_n=30)
            terms = expand_lexicon(ensemble[:k], cfg, name="a").terms
            if previous is not None:
                assert terms <= previous
            previous = terms


class TestPersistence:
    def test_model_round_trip_bitwise(self, tmp_path):
        corpus = make_corpus(tmp_path, [("d", 0, "a b c d e a b c d e.\n\nd e a b c.")])
        model = train_embedding(corpus, TINY_CFG)
        save_model(model, tmp_path / "m")
        loaded = load_model(tmp_path / "m")
        assert loaded.vocab == model.vocab
        assert np.array_equal(loaded.input_vectors, model.input_vectors)
        assert np.array_equal(loaded.output_vectors, model.output_vectors)
        assert loaded.config == model.config
        assert loaded.epoch_losses == model.epoch_losses

    def test_lexicon_round_trip(self, tmp_path):
        model = hand_model({"s": (1, 0), "x": (0.9, 0.1), "z": (0, 1)})
        cfg = LexiconConfig(seed_terms=("s",), ensemble_count=1, top_n=1)
        lex = expand_lexicon([model], cfg, name="demo")
        save_lexicon(lex, tmp_path / "demo.json", config=cfg)
        loaded = load_lexicon(tmp_path / "demo.json")
        assert loaded.name == lex.name
        assert loaded.terms == lex.terms
        assert loaded.seed_terms == lex.seed_terms
