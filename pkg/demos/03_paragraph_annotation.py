"""Semantic annotation: rule patterns plus a random forest on lexicon features.

Categories with obvious marker tokens are caught by rules; the forest
generalizes from lexicon-derived counts and rates.
"""

from _workspace import ensure_store

from reportminer import store as store_mod
from reportminer.annotate import (apply_rules, extract_features, feature_names,
                                  load_annotations, load_forest, load_patterns)
from reportminer.corpus import load_corpus
from reportminer.embedding import load_lexicon

store = ensure_store()
corpus = load_corpus(store)
forest = load_forest(store / store_mod.FOREST_FILE)
lexicons = [load_lexicon(store / "lexicons" / f"{name}.json")
            for name in ("transfer", "abuse", "testimony")]

print(f"forest: {forest.config.n_trees} trees over labels {forest.labels}, "
      f"OOB accuracy {forest.oob_accuracy:.3f}")
print(f"feature schema: {feature_names(lexicons)}")

pid = next(a.para_id for a in load_annotations(store / store_mod.ANNOTATIONS_FILE)
           if a.label == "transfer" and a.source == "rule")
para = corpus.paragraph(pid)
print(f"\n--- paragraph {pid} ---\n  {para.text[:160]}...")
print(f"  features: {extract_features(para, lexicons).tolist()}")

patterns = load_patterns(store.parent / "patterns.json")
print(f"  rule labels:   {sorted(apply_rules(para, patterns))}")

from reportminer.annotate import predict
label, confidence = predict(forest, extract_features(para, lexicons))
print(f"  forest label:  {label} (confidence {confidence:.2f})")

annotations = load_annotations(store / store_mod.ANNOTATIONS_FILE)
by_label: dict = {}
for a in annotations:
    key = (a.label, a.source)
    by_label[key] = by_label.get(key, 0) + 1
print("\n--- annotation counts by (label, source) ---")
for (label, source), n in sorted(by_label.items()):
    print(f"  {label:20s} {source:6s} {n}")
