"""Lexicon-derived paragraph features, rule patterns, and a random forest.

A paragraph's feature vector is, per lexicon: the count of token hits, the
hit rate (count / paragraph length) and a presence bit, followed by one
length feature (token count).  The forest is the canonical construction:
bootstrap sampling per tree, sqrt-d feature subsets per node, best Gini
split over midpoints of sorted distinct values, plurality voting.
"""

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import store
from .corpus import Corpus, Paragraph
from .embedding import Lexicon
from .errors import DegenerateLabels, EmptyPartition, FeatureMismatch

RULE_SOURCE = "rule"
FOREST_SOURCE = "forest"


def feature_names(lexicons: Sequence[Lexicon]) -> list[str]:
    names: list[str] = []
    for lex in lexicons:
        names += [f"count_{lex.name}", f"rate_{lex.name}", f"present_{lex.name}"]
    names.append("token_count")
    return names


def extract_features(paragraph: Paragraph, lexicons: Sequence[Lexicon]) -> np.ndarray:
    """Feature vector in the order given by feature_names(lexicons)."""
    if not lexicons:
        raise ValueError("lexicons must be non-empty")
    n_tokens = len(paragraph.tokens)
    out = np.zeros(3 * len(lexicons) + 1)
    for i, lex in enumerate(lexicons):
        count = sum(1 for tok in paragraph.tokens if tok in lex.terms)
        out[3 * i] = count
        out[3 * i + 1] = count / n_tokens if n_tokens else 0.0
        out[3 * i + 2] = 1.0 if count >= 1 else 0.0
    out[-1] = n_tokens
    return out


def lexicon_fingerprint(lexicon: Lexicon) -> str:
    """Hash of the term set, stored in model files to detect schema drift."""
    blob = json.dumps(sorted(lexicon.terms), ensure_ascii=False).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class LabeledExample:
    para_id: str
    features: np.ndarray
    label: str


def gini(label_counts: Mapping[str, int]) -> float:
    """1 - sum of squared class probabilities."""
    total = sum(label_counts.values())
    if total < 1:
        raise EmptyPartition("gini of an empty partition is undefined")
    return 1.0 - sum((c / total) ** 2 for c in label_counts.values())


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 100
    max_depth: int = 12
    min_leaf: int = 2
    features_per_split: int | None = None  # None -> ceil(sqrt(n_features))
    rng_seed: int = 0

    def validate(self) -> None:
        if self.n_trees < 1 or self.max_depth < 1 or self.min_leaf < 1:
            raise ValueError("n_trees, max_depth and min_leaf must be >= 1")


@dataclass
class RandomForestModel:
    trees: list[dict]
    config: ForestConfig
    labels: list[str]
    oob_accuracy: float | None
    feature_names: list[str]
    lexicon_hashes: dict[str, str] = field(default_factory=dict)


def _leaf(labels: Sequence[str]) -> dict:
    counts = Counter(labels)
    return {"kind": "leaf", "counts": {lab: counts[lab] for lab in sorted(counts)}}


def _leaf_label(counts: Mapping[str, int]) -> str:
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]


def _best_split(X: np.ndarray, y: list[str], idx: np.ndarray,
                features: Sequence[int], min_leaf: int):
    """Best (gain, feature, threshold) over midpoint thresholds, or None.

    Features are scanned in ascending index order and thresholds in ascending
    value order; the first strictly-better candidate wins, which makes the
    chosen split independent of RNG draw order.
    """
    labels_here = [y[i] for i in idx]
    parent = gini(Counter(labels_here))
    n = len(idx)
    classes = sorted(set(labels_here))
    class_pos = {c: k for k, c in enumerate(classes)}
    y_codes = np.array([class_pos[y[i]] for i in idx])

    best = None  # (gain, feature, threshold)
    for feat in features:
        values = X[idx, feat]
        order = np.argsort(values, kind="stable")
        sorted_vals = values[order]
        sorted_codes = y_codes[order]
        # prefix[i, c] = count of class c among the first i examples
        onehot = np.zeros((n, len(classes)))
        onehot[np.arange(n), sorted_codes] = 1.0
        prefix = np.cumsum(onehot, axis=0)
        total = prefix[-1]
        for i in range(min_leaf - 1, n - min_leaf):
            if sorted_vals[i] == sorted_vals[i + 1]:
                continue
            threshold = (sorted_vals[i] + sorted_vals[i + 1]) / 2.0
            n_left = i + 1
            left = prefix[i]
            right = total - left
            gini_left = 1.0 - float(np.sum((left / n_left) ** 2))
            gini_right = 1.0 - float(np.sum((right / (n - n_left)) ** 2))
            weighted = (n_left * gini_left + (n - n_left) * gini_right) / n
            gain = parent - weighted
            if gain > 0.0 and (best is None or gain > best[0]):
                best = (gain, feat, float(threshold))
    return best


def _grow_tree(X: np.ndarray, y: list[str], idx: np.ndarray, depth: int,
               config: ForestConfig, n_features_split: int, rng) -> dict:
    labels_here = [y[i] for i in idx]
    if depth >= config.max_depth or len(idx) < 2 * config.min_leaf \
            or len(set(labels_here)) == 1:
        return _leaf(labels_here)
    candidates = sorted(rng.choice(X.shape[1], size=n_features_split, replace=False).tolist())
    best = _best_split(X, y, idx, candidates, config.min_leaf)
    if best is None:
        return _leaf(labels_here)
    _, feat, threshold = best
    mask = X[idx, feat] <= threshold
    left_idx, right_idx = idx[mask], idx[~mask]
    return {
        "kind": "split", "feature": feat, "threshold": threshold,
        "left": _grow_tree(X, y, left_idx, depth + 1, config, n_features_split, rng),
        "right": _grow_tree(X, y, right_idx, depth + 1, config, n_features_split, rng),
    }


def _tree_vote(tree: dict, features: np.ndarray) -> str:
    node = tree
    while node["kind"] == "split":
        node = node["left"] if features[node["feature"]] <= node["threshold"] else node["right"]
    return _leaf_label(node["counts"])


def train_forest(examples: Sequence[LabeledExample], config: ForestConfig,
                 feature_names: Sequence[str] | None = None,
                 lexicon_hashes: Mapping[str, str] | None = None,
                 allow_single_label: bool = False) -> RandomForestModel:
    """Bootstrap-sampled trees with per-node feature subsets and OOB accuracy.

    Each tree draws from its own RNG stream spawned off rng_seed, so the
    result does not depend on training order.  Raises DegenerateLabels on a
    single-label training set unless allow_single_label is set.
    """
    config.validate()
    if len(examples) < 2:
        raise DegenerateLabels("need at least 2 training examples")
    labels = sorted({ex.label for ex in examples})
    if len(labels) < 2 and not allow_single_label:
        raise DegenerateLabels(f"training set has a single label: {labels[0]!r}")

    X = np.array([ex.features for ex in examples], dtype=np.float64)
    y = [ex.label for ex in examples]
    n, n_feat = X.shape
    n_split = config.features_per_split or math.ceil(math.sqrt(n_feat))
    n_split = min(n_split, n_feat)

    streams = np.random.SeedSequence(config.rng_seed).spawn(config.n_trees)
    trees: list[dict] = []
    oob_votes: list[Counter] = [Counter() for _ in range(n)]
    for t in range(config.n_trees):
        rng = np.random.default_rng(streams[t])
        bootstrap = rng.integers(0, n, size=n)
        tree = _grow_tree(X, y, bootstrap, 0, config, n_split, rng)
        trees.append(tree)
        for i in set(range(n)) - set(bootstrap.tolist()):
            oob_votes[i][_tree_vote(tree, X[i])] += 1

    covered = [i for i in range(n) if oob_votes[i]]
    if covered:
        hits = sum(1 for i in covered if _leaf_label(oob_votes[i]) == y[i])
        oob_accuracy = hits / len(covered)
    else:
        oob_accuracy = None

    return RandomForestModel(
        trees=trees, config=config, labels=labels, oob_accuracy=oob_accuracy,
        feature_names=list(feature_names) if feature_names is not None
        else [f"f{i}" for i in range(n_feat)],
        lexicon_hashes=dict(lexicon_hashes or {}),
    )


def predict(model: RandomForestModel, features: np.ndarray) -> tuple[str, float]:
    """Plurality vote over trees; confidence is the winning vote fraction."""
    features = np.asarray(features, dtype=np.float64)
    if features.shape != (len(model.feature_names),):
        raise FeatureMismatch(
            f"expected {len(model.feature_names)} features, got {features.shape}")
    votes = Counter(_tree_vote(tree, features) for tree in model.trees)
    label = sorted(votes.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]
    return label, votes[label] / len(model.trees)


@dataclass(frozen=True)
class RulePattern:
    label: str
    all_of: frozenset[str] = frozenset()
    any_of: frozenset[str] = frozenset()
    none_of: frozenset[str] = frozenset()

    def validate(self) -> None:
        if not self.all_of and not self.any_of:
            raise ValueError(f"pattern for {self.label!r} needs all_of or any_of")


def apply_rules(paragraph: Paragraph, patterns: Sequence[RulePattern]) -> set[str]:
    """Labels whose pattern matches the paragraph's token set."""
    toks = set(paragraph.tokens)
    out: set[str] = set()
    for p in patterns:
        if p.all_of <= toks and (not p.any_of or p.any_of & toks) and not (p.none_of & toks):
            out.add(p.label)
    return out


def load_patterns(path: Path) -> list[RulePattern]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    patterns = [
        RulePattern(label=rec["label"],
                    all_of=frozenset(rec.get("all_of", [])),
                    any_of=frozenset(rec.get("any_of", [])),
                    none_of=frozenset(rec.get("none_of", [])))
        for rec in raw
    ]
    for p in patterns:
        p.validate()
    return patterns


@dataclass(frozen=True)
class Annotation:
    para_id: str
    label: str
    source: str       # "rule" | "forest"
    confidence: float


def annotate_corpus(corpus: Corpus, model: RandomForestModel | None,
                    lexicons: Sequence[Lexicon], patterns: Sequence[RulePattern],
                    threshold: float = 0.5) -> list[Annotation]:
    """Rule labels (confidence 1.0) plus the forest label when its vote
    fraction reaches the threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be in [0, 1]")
    annotations: list[Annotation] = []
    for para in corpus.paragraphs:
        for label in sorted(apply_rules(para, patterns)):
            annotations.append(Annotation(para.para_id, label, RULE_SOURCE, 1.0))
        if model is not None:
            label, confidence = predict(model, extract_features(para, lexicons))
            if confidence >= threshold:
                annotations.append(Annotation(para.para_id, label, FOREST_SOURCE, confidence))
    return annotations


# --- persistence ---------------------------------------------------------

def save_forest(model: RandomForestModel, path: Path) -> None:
    payload = {
        "config": {
            "n_trees": model.config.n_trees, "max_depth": model.config.max_depth,
            "min_leaf": model.config.min_leaf,
            "features_per_split": model.config.features_per_split,
            "rng_seed": model.config.rng_seed,
        },
        "labels": model.labels,
        "oob_accuracy": model.oob_accuracy,
        "feature_names": model.feature_names,
        "lexicons": model.lexicon_hashes,
        "trees": model.trees,
    }
    store.write_json(Path(path), payload)


def load_forest(path: Path) -> RandomForestModel:
    payload = store.read_json(Path(path))
    return RandomForestModel(
        trees=payload["trees"],
        config=ForestConfig(**payload["config"]),
        labels=payload["labels"],
        oob_accuracy=payload["oob_accuracy"],
        feature_names=payload["feature_names"],
        lexicon_hashes=payload.get("lexicons", {}),
    )


def save_annotations(annotations: Sequence[Annotation], path: Path) -> None:
    store.write_jsonl(Path(path), (
        {"para_id": a.para_id, "label": a.label, "source": a.source,
         "confidence": a.confidence}
        for a in annotations
    ))


def load_annotations(path: Path) -> list[Annotation]:
    return [Annotation(rec["para_id"], rec["label"], rec["source"], rec["confidence"])
            for rec in store.read_jsonl(Path(path))]
