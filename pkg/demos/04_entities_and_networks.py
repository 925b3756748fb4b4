"""Entity tracing and the collocation / communication networks."""

from _workspace import ensure_store

from reportminer import store as store_mod
from reportminer.corpus import load_corpus
from reportminer.embedding import load_lexicon
from reportminer.entities import build_registry, entity_timeline, load_mentions
from reportminer.networks import (build_collocation_network, degree_centrality,
                                  extract_communications)

store = ensure_store()
corpus = load_corpus(store)
mentions = load_mentions(store / store_mod.MENTIONS_FILE)
registry = build_registry(corpus, mentions)

print(f"{len(mentions)} mentions of {len(registry.entities)} canonical entities")

busiest = max(registry.entities.values(), key=lambda e: e.mention_count)
print(f"\n--- most mentioned: {busiest.display_name} ({busiest.entity_type}) ---")
print(f"  {busiest.mention_count} mentions across documents {list(busiest.documents)}")
print("  timeline (first 5 hops):")
for hop in entity_timeline(registry, busiest.canonical_id)[:5]:
    print(f"    {hop['doc_id']} ordinal {hop['ordinal']:3d}  as {hop['surface']!r}")

graph = build_collocation_network(corpus, mentions)
print(f"\n--- collocation network: {len(graph.nodes)} nodes, "
      f"{graph.edge_count} edges ---")
centrality = degree_centrality(graph)
top = sorted(centrality.items(), key=lambda kv: (-kv[1][1], kv[0]))[:5]
print("  top by weighted degree:")
for node, (degree, weighted) in top:
    print(f"    {node:22s} degree={degree:2d} weighted={weighted}")

comm_lexicon = load_lexicon(store / "lexicons" / "communication.json")
excerpts = extract_communications(corpus, comm_lexicon, mentions)
print(f"\n--- communication excerpts: {len(excerpts)} flagged paragraphs ---")
sample = next(e for e in excerpts if len(e.participants) >= 2)
print(f"  {sample.para_id}: terms {list(sample.matched_terms)[:4]}, "
      f"participants {list(sample.participants)}")
