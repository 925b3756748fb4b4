"""Transfer events from annotated paragraphs and Apriori rule mining.

A paragraph annotated "transfer" is turned into a structured event by simple
slot filling: first PERSON mention is the subject, INSTITUTION mentions in
order fill from/to, the first in-range 4-digit token is the year, and other
labels on the paragraph become context flags.  Events unusable for mining
(no person, no institution) go to an exceptions list instead of being
dropped.  Mining is classic level-wise Apriori, exhaustive and exact for the
given thresholds.
"""

import csv
import re
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import store
from .corpus import Corpus
from .annotate import Annotation
from .entities import EntityMention
from .errors import NoTransactions

TRANSFER_LABEL = "transfer"
YEAR_RANGE = (1850, 2009)
# co-occurring annotation labels renamed when emitted as context flags
FLAG_ALIASES = {"abuse-description": "allegation_context"}

_YEAR_RE = re.compile(r"^\d{4}$")


@dataclass(frozen=True)
class TransferEvent:
    event_id: str
    para_id: str
    person: str
    from_institution: str | None
    to_institution: str | None
    year: int | None
    context_flags: tuple[str, ...]


@dataclass(frozen=True)
class Transaction:
    event_id: str
    items: frozenset[str]


@dataclass(frozen=True)
class AssociationRule:
    antecedent: frozenset[str]
    consequent: frozenset[str]
    support: float
    confidence: float
    lift: float


def rule_text(rule: AssociationRule) -> str:
    return ",".join(sorted(rule.antecedent)) + " => " + ",".join(sorted(rule.consequent))


def extract_transfer_events(corpus: Corpus, annotations: Sequence[Annotation],
                            mentions: Sequence[EntityMention],
                            ) -> tuple[list[TransferEvent], list[dict]]:
    """Slot-fill events for every transfer-annotated paragraph.

    Returns (events, exceptions); an exception record names the paragraph and
    the reason it could not be parsed.
    """
    labels_by_para: dict[str, set[str]] = {}
    for ann in annotations:
        labels_by_para.setdefault(ann.para_id, set()).add(ann.label)
    mentions_by_para: dict[str, list[EntityMention]] = {}
    for m in mentions:
        mentions_by_para.setdefault(m.para_id, []).append(m)

    events: list[TransferEvent] = []
    exceptions: list[dict] = []
    for para in corpus.paragraphs:
        labels = labels_by_para.get(para.para_id, set())
        if TRANSFER_LABEL not in labels:
            continue
        ms = sorted(mentions_by_para.get(para.para_id, []), key=lambda m: m.start)
        persons = [m for m in ms if m.entity_type == "PERSON"]
        institutions: list[str] = []
        for m in ms:
            if m.entity_type == "INSTITUTION" and m.canonical_id not in institutions:
                institutions.append(m.canonical_id)
        if not persons:
            exceptions.append({"para_id": para.para_id, "reason": "no person mention"})
            continue
        if not institutions:
            exceptions.append({"para_id": para.para_id, "reason": "no institution mention"})
            continue
        if len(institutions) == 1:
            from_institution, to_institution = None, institutions[0]
        else:
            from_institution, to_institution = institutions[0], institutions[1]

        year = None
        for tok in para.tokens:
            if _YEAR_RE.match(tok) and YEAR_RANGE[0] <= int(tok) <= YEAR_RANGE[1]:
                year = int(tok)
                break

        flags = sorted({FLAG_ALIASES.get(lbl, lbl) for lbl in labels if lbl != TRANSFER_LABEL})
        events.append(TransferEvent(
            event_id=f"{para.para_id}/transfer", para_id=para.para_id,
            person=persons[0].canonical_id, from_institution=from_institution,
            to_institution=to_institution, year=year, context_flags=tuple(flags)))
    return events, exceptions


def itemize(events: Sequence[TransferEvent]) -> list[Transaction]:
    """key=value items per event; absent fields emit nothing."""
    out: list[Transaction] = []
    for ev in events:
        items = {"person_type=religious"}
        if ev.from_institution:
            items.add(f"from={ev.from_institution}")
        if ev.to_institution:
            items.add(f"to={ev.to_institution}")
        if ev.year is not None:
            items.add(f"decade={ev.year // 10 * 10}")
        for flag in ev.context_flags:
            items.add(f"flag={flag}")
        out.append(Transaction(event_id=ev.event_id, items=frozenset(items)))
    return out


def _item_sets(transactions: Sequence) -> list[frozenset[str]]:
    return [t.items if isinstance(t, Transaction) else frozenset(t) for t in transactions]


def support(itemset: Iterable[str], transactions: Sequence) -> float:
    """Fraction of transactions containing the itemset; support({}) is 1.0."""
    sets = _item_sets(transactions)
    if not sets:
        raise NoTransactions("support over an empty transaction list is undefined")
    wanted = frozenset(itemset)
    return sum(1 for s in sets if wanted <= s) / len(sets)


def frequent_itemsets(transactions: Sequence, min_support: float,
                      max_size: int = 4) -> dict[frozenset[str], float]:
    """Level-wise frequent itemset generation with candidate pruning."""
    if not 0.0 < min_support <= 1.0:
        raise ValueError("min_support must be in (0, 1]")
    sets = _item_sets(transactions)
    if not sets:
        raise NoTransactions("cannot mine an empty transaction list")
    n = len(sets)

    def sup(itemset: frozenset[str]) -> float:
        return sum(1 for s in sets if itemset <= s) / n

    items = sorted({item for s in sets for item in s})
    frequent: dict[frozenset[str], float] = {}
    level = []
    for item in items:
        candidate = frozenset([item])
        s = sup(candidate)
        if s >= min_support:
            frequent[candidate] = s
            level.append(candidate)

    size = 1
    while level and size < max_size:
        size += 1
        # join step: two (k-1)-itemsets sharing their first k-2 sorted items
        ordered = sorted(tuple(sorted(c)) for c in level)
        candidates: set[frozenset[str]] = set()
        for i in range(len(ordered)):
            for j in range(i + 1, len(ordered)):
                if ordered[i][:-1] != ordered[j][:-1]:
                    continue
                merged = frozenset(ordered[i]) | frozenset(ordered[j])
                if all(frozenset(sub) in frequent
                       for sub in combinations(sorted(merged), size - 1)):
                    candidates.add(merged)
        next_level = []
        for candidate in sorted(candidates, key=lambda c: tuple(sorted(c))):
            s = sup(candidate)
            if s >= min_support:
                frequent[candidate] = s
                next_level.append(candidate)
        level = next_level
    return frequent


def mine_rules(transactions: Sequence, min_support: float, min_confidence: float,
               max_itemset_size: int = 4) -> list[AssociationRule]:
    """Apriori rule mining, sorted by (confidence desc, support desc, text)."""
    if not 0.0 < min_confidence <= 1.0:
        raise ValueError("min_confidence must be in (0, 1]")
    frequent = frequent_itemsets(transactions, min_support, max_size=max_itemset_size)
    rules: list[AssociationRule] = []
    for itemset, sup_union in frequent.items():
        if len(itemset) < 2:
            continue
        members = sorted(itemset)
        for r in range(1, len(members)):
            for antecedent_items in combinations(members, r):
                antecedent = frozenset(antecedent_items)
                consequent = itemset - antecedent
                confidence = sup_union / frequent[antecedent]
                if confidence >= min_confidence:
                    lift = confidence / frequent[consequent]
                    rules.append(AssociationRule(antecedent, consequent,
                                                 sup_union, confidence, lift))
    rules.sort(key=lambda rule: (-rule.confidence, -rule.support, rule_text(rule)))
    return rules


def flow_counts(events: Sequence[TransferEvent]) -> dict[tuple[str, str], int]:
    """(from, to) -> event count, over events with both endpoints present."""
    out: dict[tuple[str, str], int] = {}
    for ev in events:
        if ev.from_institution and ev.to_institution:
            key = (ev.from_institution, ev.to_institution)
            out[key] = out.get(key, 0) + 1
    return out


# --- persistence ---------------------------------------------------------

def save_events(events: Sequence[TransferEvent], path: Path) -> None:
    store.write_jsonl(Path(path), (
        {"event_id": ev.event_id, "para_id": ev.para_id, "person": ev.person,
         "from_institution": ev.from_institution, "to_institution": ev.to_institution,
         "year": ev.year, "context_flags": list(ev.context_flags)}
        for ev in events
    ))


def load_events(path: Path) -> list[TransferEvent]:
    return [TransferEvent(rec["event_id"], rec["para_id"], rec["person"],
                          rec["from_institution"], rec["to_institution"],
                          rec["year"], tuple(rec["context_flags"]))
            for rec in store.read_jsonl(Path(path))]


def save_rules_json(rules: Sequence[AssociationRule], path: Path) -> None:
    store.write_json(Path(path), [
        {"antecedent": sorted(r.antecedent), "consequent": sorted(r.consequent),
         "support": r.support, "confidence": r.confidence, "lift": r.lift}
        for r in rules
    ])


def save_rules_csv(rules: Sequence[AssociationRule], path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["antecedent", "consequent", "support", "confidence", "lift"])
        for r in rules:
            writer.writerow([",".join(sorted(r.antecedent)), ",".join(sorted(r.consequent)),
                             repr(r.support), repr(r.confidence), repr(r.lift)])
