"""Transfer events and the association rules mined over them."""

from _workspace import ensure_store

from reportminer import store as store_mod
from reportminer.transfers import (flow_counts, itemize, load_events, mine_rules,
                                   rule_text, support)

store = ensure_store()
events = load_events(store / store_mod.TRANSFERS_FILE)
print(f"{len(events)} transfer events extracted")

event = events[0]
print(f"\n--- example event ({event.para_id}) ---")
print(f"  person: {event.person}")
print(f"  route:  {event.from_institution} -> {event.to_institution}")
print(f"  year:   {event.year}   flags: {list(event.context_flags)}")

transactions = itemize(events)
print(f"\n--- itemized transaction ---\n  {sorted(transactions[0].items)}")
print(f"  support of 'person_type=religious': "
      f"{support({'person_type=religious'}, transactions):.2f}")

rules = mine_rules(transactions, min_support=0.1, min_confidence=0.6,
                   max_itemset_size=3)
print(f"\n--- top rules (support >= 0.1, confidence >= 0.6) ---")
for rule in rules[:8]:
    print(f"  {rule_text(rule):55s} "
          f"s={rule.support:.2f} c={rule.confidence:.2f} lift={rule.lift:.2f}")

print("\n--- from -> to flows ---")
for (src, dst), count in sorted(flow_counts(events).items(),
                                key=lambda kv: (-kv[1], kv[0]))[:6]:
    print(f"  {src:22s} -> {dst:22s} x{count}")
