"""Skip-gram negative-sampling embeddings and consensus lexicon expansion.

Training is plain mini-batch SGD over (center, context) pairs.  For each pair
the objective is

    log sigmoid(u_ctx . v_ctr) + sum_neg log sigmoid(-u_neg . v_ctr)

with negatives drawn from the unigram distribution raised to 0.75 and the
learning rate decaying linearly to 1e-4 of its initial value.  Everything is
driven by one numpy Generator, so a model is a pure function of
(corpus, config): retraining with the same rng_seed is bitwise identical.

Lexicons are expanded by taking each seed's top-n nearest neighbors in every
ensemble member and keeping the terms all members agree on.
"""

import json
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyVocabulary, UnknownSeed, UnknownTerm, ZeroVector

# Update granularity of the SGD loop.  Fixed (not configurable) because the
# accumulation order is part of the reproducibility contract.  Small enough
# that duplicate rows inside one batch stay rare even for tiny vocabularies;
# large batches destabilize the objective there.
_PAIR_BATCH_SIZE = 256
_LR_FLOOR_FRACTION = 1e-4
_NOISE_POWER = 0.75


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 15
    min_count: int = 3
    initial_learning_rate: float = 0.025
    rng_seed: int = 0

    def validate(self) -> None:
        if self.dim < 1 or self.window < 1 or self.negatives < 1 \
                or self.epochs < 1 or self.min_count < 1:
            raise ValueError("dim, window, negatives, epochs and min_count must be >= 1")
        if not self.initial_learning_rate > 0:
            raise ValueError("initial_learning_rate must be > 0")


@dataclass
class EmbeddingModel:
    vocab: list[str]
    input_vectors: np.ndarray   # (vocab, dim) float64
    output_vectors: np.ndarray  # (vocab, dim) float64
    config: EmbeddingConfig
    epoch_losses: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.token_to_idx = {tok: i for i, tok in enumerate(self.vocab)}

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_idx

    def vector(self, token: str) -> np.ndarray:
        try:
            return self.input_vectors[self.token_to_idx[token]]
        except KeyError:
            raise UnknownTerm(f"token {token!r} not in vocabulary") from None


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _log_sigmoid(x):
    return -np.logaddexp(0.0, -x)


def sgns_loss_and_grads(center_vec: np.ndarray, context_vec: np.ndarray,
                        negative_vecs: np.ndarray):
    """Loss and exact gradients for a single (center, context, negatives) sample.

    Returns (loss, grad_center, grad_context, grad_negatives).  This is the
    unit the training loop applies in batches; tests check it against central
    finite differences.
    """
    s_pos = float(context_vec @ center_vec)
    s_neg = negative_vecs @ center_vec
    loss = -(_log_sigmoid(s_pos) + _log_sigmoid(-s_neg).sum())
    g_pos = _sigmoid(s_pos) - 1.0
    g_neg = _sigmoid(s_neg)
    grad_center = g_pos * context_vec + g_neg @ negative_vecs
    grad_context = g_pos * center_vec
    grad_negatives = np.outer(g_neg, center_vec)
    return float(loss), grad_center, grad_context, grad_negatives


def _build_vocab(token_lists: Iterable[Sequence[str]], min_count: int):
    counts = Counter()
    for toks in token_lists:
        counts.update(toks)
    vocab = sorted((t for t, c in counts.items() if c >= min_count),
                   key=lambda t: (-counts[t], t))
    if not vocab:
        raise EmptyVocabulary(f"no token occurs >= {min_count} times")
    return vocab, np.array([counts[t] for t in vocab], dtype=np.float64)


def _training_pairs(token_lists: Iterable[Sequence[str]], token_to_idx: dict,
                    window: int) -> np.ndarray:
    """(n_pairs, 2) int array of (center, context) ids, corpus order.

    Tokens below min_count are removed before windowing, so contexts close up
    around them.
    """
    centers: list[int] = []
    contexts: list[int] = []
    for toks in token_lists:
        ids = [token_to_idx[t] for t in toks if t in token_to_idx]
        n = len(ids)
        for i, center in enumerate(ids):
            lo = max(0, i - window)
            hi = min(n, i + window + 1)
            for j in range(lo, hi):
                if j != i:
                    centers.append(center)
                    contexts.append(ids[j])
    if not centers:
        return np.empty((0, 2), dtype=np.int64)
    return np.column_stack([np.asarray(centers, dtype=np.int64),
                            np.asarray(contexts, dtype=np.int64)])


def train_embedding(corpus, config: EmbeddingConfig) -> EmbeddingModel:
    """Train one SGNS model on a corpus (anything with .paragraphs)."""
    config.validate()
    token_lists = [p.tokens for p in corpus.paragraphs]
    vocab, counts = _build_vocab(token_lists, config.min_count)
    token_to_idx = {t: i for i, t in enumerate(vocab)}
    pairs = _training_pairs(token_lists, token_to_idx, config.window)

    rng = np.random.default_rng(config.rng_seed)
    dim = config.dim
    input_vectors = (rng.random((len(vocab), dim)) - 0.5) / dim
    output_vectors = np.zeros((len(vocab), dim))

    noise = counts ** _NOISE_POWER
    noise_cdf = np.cumsum(noise / noise.sum())
    noise_cdf[-1] = 1.0

    n_pairs = len(pairs)
    epoch_losses: list[float] = []
    if n_pairs == 0:
        return EmbeddingModel(vocab, input_vectors, output_vectors, config, epoch_losses)

    lr0 = config.initial_learning_rate
    lr_floor = lr0 * _LR_FLOOR_FRACTION
    total_steps = config.epochs * n_pairs
    done = 0

    for _ in range(config.epochs):
        order = rng.permutation(n_pairs)
        epoch_loss = 0.0
        for start in range(0, n_pairs, _PAIR_BATCH_SIZE):
            batch = pairs[order[start:start + _PAIR_BATCH_SIZE]]
            centers, contexts = batch[:, 0], batch[:, 1]
            b = len(batch)
            negs = np.searchsorted(noise_cdf, rng.random((b, config.negatives)),
                                   side="right")

            lr = max(lr0 * (1.0 - done / total_steps), lr_floor)
            v = input_vectors[centers]                # (b, d)
            u_pos = output_vectors[contexts]          # (b, d)
            u_neg = output_vectors[negs]              # (b, k, d)

            s_pos = np.einsum("bd,bd->b", v, u_pos)
            s_neg = np.einsum("bkd,bd->bk", u_neg, v)
            epoch_loss -= _log_sigmoid(s_pos).sum() + _log_sigmoid(-s_neg).sum()

            g_pos = _sigmoid(s_pos) - 1.0             # (b,)
            g_neg = _sigmoid(s_neg)                   # (b, k)
            grad_v = g_pos[:, None] * u_pos + np.einsum("bk,bkd->bd", g_neg, u_neg)
            grad_u_pos = g_pos[:, None] * v
            grad_u_neg = g_neg[:, :, None] * v[:, None, :]

            np.add.at(input_vectors, centers, -lr * grad_v)
            np.add.at(output_vectors, contexts, -lr * grad_u_pos)
            np.add.at(output_vectors, negs.reshape(-1),
                      (-lr * grad_u_neg).reshape(-1, dim))
            done += b
        epoch_losses.append(epoch_loss / n_pairs)

    return EmbeddingModel(vocab, input_vectors, output_vectors, config, epoch_losses)


def train_ensemble(corpus, config: EmbeddingConfig, lexcfg: "LexiconConfig") -> list[EmbeddingModel]:
    """k independent models; member i uses rng_seed + i, all else identical."""
    return [train_embedding(corpus, replace(config, rng_seed=config.rng_seed + i))
            for i in range(lexcfg.ensemble_count)]


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("cosine similarity of a zero vector is undefined")
    return float(np.dot(a, b) / (na * nb))


def nearest_neighbors(model: EmbeddingModel, term: str, n: int) -> list[tuple[str, float]]:
    """Top-n vocabulary tokens by input-vector cosine, excluding the query.

    Ties are broken by lexicographic token order so the ranking is exact and
    reproducible.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if term not in model:
        raise UnknownTerm(f"token {term!r} not in vocabulary")
    query = model.vector(term)
    scored = [(tok, cosine_similarity(model.input_vectors[i], query))
              for i, tok in enumerate(model.vocab) if tok != term]
    scored.sort(key=lambda ts: (-ts[1], ts[0]))
    return scored[:n]


@dataclass(frozen=True)
class LexiconConfig:
    seed_terms: tuple[str, ...]
    ensemble_count: int = 5
    top_n: int = 30
    include_seeds: bool = True

    def validate(self) -> None:
        if self.ensemble_count < 1 or self.top_n < 1:
            raise ValueError("ensemble_count and top_n must be >= 1")
        if not self.seed_terms:
            raise ValueError("seed_terms must be non-empty")
        for seed in self.seed_terms:
            if not seed or seed != seed.lower():
                raise ValueError(f"seed terms must be non-empty lowercase tokens: {seed!r}")


@dataclass
class Lexicon:
    name: str
    seed_terms: set[str]
    terms: set[str]
    # term -> list of {"seed": ..., "ranks": [rank in member 0, member 1, ...]}
    provenance: dict[str, list[dict]] = field(default_factory=dict)


def expand_lexicon(models: Sequence[EmbeddingModel], lexcfg: LexiconConfig,
                   name: str = "lexicon") -> Lexicon:
    """Per seed, intersect the top_n neighbor sets of all ensemble members.

    The lexicon's terms are the union over seeds of those consensus sets,
    plus the seeds themselves when include_seeds is set.
    """
    lexcfg.validate()
    if not models:
        raise ValueError("models must be non-empty")
    for i, model in enumerate(models):
        for seed in lexcfg.seed_terms:
            if seed not in model:
                raise UnknownSeed(f"seed {seed!r} not in vocabulary of ensemble member {i}")

    seeds = sorted(lexcfg.seed_terms)
    terms: set[str] = set()
    provenance: dict[str, list[dict]] = {}
    for seed in seeds:
        per_member_ranks: list[dict[str, int]] = []
        for model in models:
            neighbors = nearest_neighbors(model, seed, lexcfg.top_n)
            per_member_ranks.append({tok: r for r, (tok, _) in enumerate(neighbors, start=1)})
        consensus = set(per_member_ranks[0])
        for ranks in per_member_ranks[1:]:
            consensus &= set(ranks)
        for term in sorted(consensus):
            terms.add(term)
            provenance.setdefault(term, []).append(
                {"seed": seed, "ranks": [ranks[term] for ranks in per_member_ranks]})
    if lexcfg.include_seeds:
        for seed in seeds:
            terms.add(seed)
            provenance.setdefault(seed, []).append({"seed": seed, "ranks": []})
    return Lexicon(name=name, seed_terms=set(seeds), terms=terms, provenance=provenance)


# --- persistence ---------------------------------------------------------

_VEC_LINE_RE = re.compile(r"\S+")


def save_model(model: EmbeddingModel, base_path: Path) -> None:
    """Write <base>.vec / <base>.out / <base>.meta.

    Vector components are written with repr(), which round-trips float64
    exactly, so save/load is lossless.
    """
    base_path = Path(base_path)
    base_path.parent.mkdir(parents=True, exist_ok=True)

    def write_matrix(path: Path, matrix: np.ndarray) -> None:
        with path.open("w", encoding="utf-8") as fh:
            fh.write(f"{len(model.vocab)} {model.config.dim}\n")
            for tok, row in zip(model.vocab, matrix):
                fh.write(tok + " " + " ".join(repr(float(x)) for x in row) + "\n")

    write_matrix(base_path.with_suffix(".vec"), model.input_vectors)
    write_matrix(base_path.with_suffix(".out"), model.output_vectors)
    meta = {
        "config": {
            "dim": model.config.dim, "window": model.config.window,
            "negatives": model.config.negatives, "epochs": model.config.epochs,
            "min_count": model.config.min_count,
            "initial_learning_rate": model.config.initial_learning_rate,
            "rng_seed": model.config.rng_seed,
        },
        "rng_seed": model.config.rng_seed,
        "epoch_losses": model.epoch_losses,
    }
    base_path.with_suffix(".meta").write_text(
        json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")


def load_model(base_path: Path) -> EmbeddingModel:
    base_path = Path(base_path)
    meta = json.loads(base_path.with_suffix(".meta").read_text(encoding="utf-8"))
    config = EmbeddingConfig(**meta["config"])

    def read_matrix(path: Path):
        lines = path.read_text(encoding="utf-8").splitlines()
        vocab_size, dim = (int(x) for x in lines[0].split())
        vocab: list[str] = []
        rows = np.empty((vocab_size, dim))
        for i, line in enumerate(lines[1:vocab_size + 1]):
            parts = line.split(" ")
            vocab.append(parts[0])
            rows[i] = [float(x) for x in parts[1:]]
        return vocab, rows

    vocab, input_vectors = read_matrix(base_path.with_suffix(".vec"))
    _, output_vectors = read_matrix(base_path.with_suffix(".out"))
    return EmbeddingModel(vocab, input_vectors, output_vectors, config,
                          list(meta.get("epoch_losses", [])))


def save_lexicon(lexicon: Lexicon, path: Path, config: LexiconConfig | None = None) -> None:
    payload = {
        "name": lexicon.name,
        "seed_terms": sorted(lexicon.seed_terms),
        "terms": sorted(lexicon.terms),
        "provenance": lexicon.provenance,
        "config": None if config is None else {
            "ensemble_count": config.ensemble_count, "top_n": config.top_n,
            "seed_terms": sorted(config.seed_terms), "include_seeds": config.include_seeds,
        },
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n",
                    encoding="utf-8")


def load_lexicon(path: Path) -> Lexicon:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return Lexicon(name=payload["name"], seed_terms=set(payload["seed_terms"]),
                   terms=set(payload["terms"]), provenance=payload.get("provenance", {}))
