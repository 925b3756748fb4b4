"""Word embeddings and consensus lexicon expansion.

An ensemble of skip-gram models is trained with different seeds; a seed
term's neighborhood is intersected across members so only stable synonyms
survive into the lexicon.
"""

from _workspace import ensure_store, manifest

from reportminer.cli import load_ensemble
from reportminer.embedding import LexiconConfig, expand_lexicon, nearest_neighbors

store = ensure_store()
info = manifest()
models = load_ensemble(store)
print(f"loaded {len(models)} ensemble members "
      f"(dim={models[0].config.dim}, vocab={len(models[0].vocab)})")

seed = info["clusters"]["a"]["seed_terms"][0]
print(f"\n--- top 10 neighbors of {seed!r} per member ---")
for i, model in enumerate(models):
    neighbors = [t for t, _ in nearest_neighbors(model, seed, 10)]
    print(f"  member {i}: {neighbors}")

print("\n--- consensus lexicon (terms every member agrees on) ---")
cfg = LexiconConfig(seed_terms=tuple(info["clusters"]["a"]["seed_terms"]),
                    ensemble_count=len(models), top_n=20)
lexicon = expand_lexicon(models, cfg, name="cluster_a")
print(f"  seeds: {sorted(lexicon.seed_terms)}")
print(f"  {len(lexicon.terms)} terms: {sorted(lexicon.terms)[:12]} ...")

term = next(iter(lexicon.terms - lexicon.seed_terms))
print(f"\n--- provenance of {term!r} ---")
for record in lexicon.provenance[term]:
    print(f"  expanded from {record['seed']!r}, per-member ranks {record['ranks']}")

print("\n--- strictness: the consensus shrinks as members are added ---")
for k in range(1, len(models) + 1):
    cfg_k = LexiconConfig(seed_terms=cfg.seed_terms, ensemble_count=k, top_n=20)
    print(f"  k={k}: {len(expand_lexicon(models[:k], cfg_k, name='x').terms)} terms")
