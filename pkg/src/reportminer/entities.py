"""Gazetteer + title-rule entity recognition and the canonical registry.

Recognition runs in two passes over the original (case-preserved) paragraph
text: a longest-match, case-insensitive gazetteer scan, then a title rule
("Br"/"Fr"/"Sr" followed by one or two capitalized words makes a PERSON).
Gazetteer matches win on overlap; within a pass, longer and then leftmost
matches win.
"""

import csv
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import store
from .corpus import Corpus, Paragraph, tokenize
from .errors import UnknownEntity

ENTITY_TYPES = ("PERSON", "INSTITUTION", "ORGANIZATION", "PLACE")

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class GazetteerEntry:
    surface: str
    entity_type: str
    canonical_id: str

    def validate(self) -> None:
        if not self.surface or not self.canonical_id:
            raise ValueError("gazetteer surface and canonical_id must be non-empty")
        if self.entity_type not in ENTITY_TYPES:
            raise ValueError(f"unknown entity_type {self.entity_type!r}")


@dataclass(frozen=True)
class EntityMention:
    para_id: str
    start: int
    end: int
    surface: str
    entity_type: str
    canonical_id: str


@dataclass(frozen=True)
class Entity:
    canonical_id: str
    display_name: str
    entity_type: str
    mention_count: int
    documents: tuple[str, ...]


def load_gazetteer(path: Path) -> list[GazetteerEntry]:
    entries: list[GazetteerEntry] = []
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            entry = GazetteerEntry(surface=row["surface"].strip(),
                                   entity_type=row["entity_type"].strip(),
                                   canonical_id=row["canonical_id"].strip())
            entry.validate()
            entries.append(entry)
    return entries


def load_title_rules(path: Path) -> list[str]:
    return [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines()
            if line.strip()]


class GazetteerIndex:
    """Entries pre-indexed by lowercase first token, longest surface first."""

    def __init__(self, entries: Iterable[GazetteerEntry]):
        by_first: dict[str, list[tuple[tuple[str, ...], GazetteerEntry]]] = {}
        for entry in entries:
            toks = tuple(tokenize(entry.surface))
            if not toks:
                continue
            by_first.setdefault(toks[0], []).append((toks, entry))
        # longest first; canonical_id breaks exact-duplicate ties so the scan
        # never depends on gazetteer file order
        for cands in by_first.values():
            cands.sort(key=lambda te: (-len(te[0]), te[1].canonical_id))
        self.by_first = by_first


def _word_spans(text: str) -> list[tuple[int, int, str]]:
    return [(m.start(), m.end(), m.group()) for m in _WORD_RE.finditer(text)]


def _is_capitalized(word: str) -> bool:
    return word[:1].isupper()


def recognize_entities(paragraph: Paragraph, gazetteer: GazetteerIndex | Sequence[GazetteerEntry],
                       title_rules: Sequence[str]) -> list[EntityMention]:
    """All gazetteer and title-rule mentions in a paragraph, by start offset.

    Mentions never overlap; the span always slices back to the surface.
    """
    if not isinstance(gazetteer, GazetteerIndex):
        gazetteer = GazetteerIndex(gazetteer)
    text = paragraph.text
    words = _word_spans(text)
    lower = [w.lower() for _, _, w in words]
    mentions: list[EntityMention] = []
    taken: list[tuple[int, int]] = []

    i = 0
    while i < len(words):
        matched = False
        for toks, entry in gazetteer.by_first.get(lower[i], []):
            k = len(toks)
            if i + k <= len(words) and tuple(lower[i:i + k]) == toks:
                start, end = words[i][0], words[i + k - 1][1]
                mentions.append(EntityMention(paragraph.para_id, start, end,
                                              text[start:end], entry.entity_type,
                                              entry.canonical_id))
                taken.append((start, end))
                i += k
                matched = True
                break
        if not matched:
            i += 1

    titles = {t.lower() for t in title_rules}
    i = 0
    while i < len(words):
        if lower[i] in titles:
            j = i + 1
            while j < len(words) and j - i <= 2 and _is_capitalized(words[j][2]):
                j += 1
            if j > i + 1:
                start, end = words[i][0], words[j - 1][1]
                if not any(start < te and ts < end for ts, te in taken):
                    surface = text[start:end]
                    mentions.append(EntityMention(
                        paragraph.para_id, start, end, surface, "PERSON",
                        "_".join(tokenize(surface))))
                    taken.append((start, end))
                i = j
                continue
        i += 1

    mentions.sort(key=lambda m: m.start)
    return mentions


def extract_all_mentions(corpus: Corpus, gazetteer: Sequence[GazetteerEntry],
                         title_rules: Sequence[str]) -> list[EntityMention]:
    index = GazetteerIndex(gazetteer)
    out: list[EntityMention] = []
    for para in corpus.paragraphs:
        out.extend(recognize_entities(para, index, title_rules))
    return out


def dominant_entity_types(mentions: Iterable[EntityMention]) -> dict[str, str]:
    """canonical_id -> most frequent entity_type (ties lexicographically)."""
    counters: dict[str, Counter] = {}
    for m in mentions:
        counters.setdefault(m.canonical_id, Counter())[m.entity_type] += 1
    return {cid: sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]
            for cid, c in counters.items()}


@dataclass
class EntityRegistry:
    corpus: Corpus
    entities: dict[str, Entity]
    mentions_by_entity: dict[str, list[EntityMention]] = field(default_factory=dict)

    def __contains__(self, canonical_id: str) -> bool:
        return canonical_id in self.entities


def build_registry(corpus: Corpus, mentions: Sequence[EntityMention]) -> EntityRegistry:
    """One Entity per canonical_id with aggregated counts and document sets."""
    by_entity: dict[str, list[EntityMention]] = {}
    for m in mentions:
        by_entity.setdefault(m.canonical_id, []).append(m)
    types = dominant_entity_types(mentions)

    entities: dict[str, Entity] = {}
    for cid in sorted(by_entity):
        ms = by_entity[cid]
        surface_counts = Counter(m.surface for m in ms)
        display = sorted(surface_counts.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]
        docs = sorted({corpus.paragraph(m.para_id).doc_id for m in ms})
        entities[cid] = Entity(canonical_id=cid, display_name=display,
                               entity_type=types[cid], mention_count=len(ms),
                               documents=tuple(docs))
    return EntityRegistry(corpus=corpus, entities=entities, mentions_by_entity=by_entity)


def entity_timeline(registry: EntityRegistry, canonical_id: str) -> list[dict]:
    """Mentions of one entity ordered by (chapter_no, ordinal); stable sort."""
    if canonical_id not in registry.entities:
        raise UnknownEntity(f"no entity with canonical_id {canonical_id!r}")
    corpus = registry.corpus
    hops = []
    for m in registry.mentions_by_entity[canonical_id]:
        para = corpus.paragraph(m.para_id)
        hops.append({"doc_id": para.doc_id, "ordinal": para.ordinal,
                     "para_id": m.para_id, "surface": m.surface,
                     "chapter_no": corpus.documents[para.doc_id].chapter_no})
    hops.sort(key=lambda h: (h["chapter_no"], h["ordinal"]))
    return [{k: h[k] for k in ("doc_id", "ordinal", "para_id", "surface")} for h in hops]


# --- persistence ---------------------------------------------------------

def save_mentions(mentions: Sequence[EntityMention], path: Path) -> None:
    store.write_jsonl(Path(path), (
        {"para_id": m.para_id, "start": m.start, "end": m.end, "surface": m.surface,
         "entity_type": m.entity_type, "canonical_id": m.canonical_id}
        for m in mentions
    ))


def load_mentions(path: Path) -> list[EntityMention]:
    return [EntityMention(rec["para_id"], rec["start"], rec["end"], rec["surface"],
                          rec["entity_type"], rec["canonical_id"])
            for rec in store.read_jsonl(Path(path))]


def save_registry(registry: EntityRegistry, path: Path) -> None:
    store.write_jsonl(Path(path), (
        {"canonical_id": e.canonical_id, "display_name": e.display_name,
         "entity_type": e.entity_type, "mention_count": e.mention_count,
         "documents": list(e.documents)}
        for e in (registry.entities[c] for c in sorted(registry.entities))
    ))
