"""Corpus ingestion: paragraph segmentation, tokenization, inverted index.

Documents arrive as JSON Lines ({"doc_id", "title", "chapter_no", "text"}).
Each document is split into blank-line-delimited paragraphs, the unit every
downstream stage works at.  Ingestion is deterministic: identical input bytes
give identical paragraph ids, token lists and stats.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from . import store
from .errors import DuplicateDocument, MalformedRecord, StoreError

# Scale of the inquiry report this toolkit was designed around; kept as
# documented reference constants for sizing tests and documentation.
REFERENCE_PARAGRAPH_COUNT = 6839
REFERENCE_WORD_COUNT = 597651

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_BLOCK_SPLIT_RE = re.compile(r"\n\s*\n")
_RYAN_LABEL_RE = re.compile(r"^(\d+\.\d{2})(?:\s+|$)")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on maximal runs of non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


def segment_paragraphs(raw_text: str) -> list[tuple[str | None, str]]:
    """Split raw document text into (ryan_number, paragraph_text) blocks.

    Blocks are separated by one or more blank lines.  A leading decimal label
    such as "7.03 " is captured as the paragraph's ryan_number and stripped
    from the text.  Empty blocks are dropped.
    """
    out: list[tuple[str | None, str]] = []
    for block in _BLOCK_SPLIT_RE.split(raw_text):
        block = block.strip()
        if not block:
            continue
        ryan_number = None
        m = _RYAN_LABEL_RE.match(block)
        if m:
            ryan_number = m.group(1)
            block = block[m.end():].strip()
            if not block:
                continue
        out.append((ryan_number, block))
    return out


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    chapter_no: int
    raw_text: str


@dataclass(frozen=True)
class Paragraph:
    para_id: str
    doc_id: str
    ordinal: int
    ryan_number: str | None
    text: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class CorpusStats:
    paragraph_count: int
    token_count: int
    vocab_size: int


@dataclass
class InvertedIndex:
    """token -> sorted, duplicate-free list of para_id."""

    postings: dict[str, list[str]] = field(default_factory=dict)

    @classmethod
    def build(cls, paragraphs: Iterable[Paragraph]) -> "InvertedIndex":
        seen: dict[str, set[str]] = {}
        for para in paragraphs:
            for tok in set(para.tokens):
                seen.setdefault(tok, set()).add(para.para_id)
        return cls({tok: sorted(ids) for tok, ids in seen.items()})


def lookup(index: InvertedIndex, token: str) -> list[str]:
    """Paragraph ids containing the token; unknown tokens give []."""
    return list(index.postings.get(token, []))


def make_para_id(doc_id: str, ordinal: int) -> str:
    return f"{doc_id}:{ordinal:04d}"


class Corpus:
    """An immutable, indexed paragraph store backed by a store directory."""

    def __init__(self, documents: list[Document], paragraphs: list[Paragraph],
                 index: InvertedIndex, stats: CorpusStats, store_dir: Path | None = None):
        self.documents = {d.doc_id: d for d in documents}
        self.doc_order = [d.doc_id for d in documents]
        self.paragraphs = paragraphs
        self._by_id = {p.para_id: p for p in paragraphs}
        self.index = index
        self.stats = stats
        self.store_dir = store_dir

    def paragraph(self, para_id: str) -> Paragraph:
        return self._by_id[para_id]

    def __contains__(self, para_id: str) -> bool:
        return para_id in self._by_id

    def document(self, doc_id: str) -> Document:
        return self.documents[doc_id]

    def chapter_of(self, para_id: str) -> int:
        return self.documents[self._by_id[para_id].doc_id].chapter_no


def _parse_document_line(lineno: int, line: str) -> Document:
    import json

    try:
        obj = json.loads(line)
    except ValueError as exc:
        raise MalformedRecord(f"line {lineno}: not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedRecord(f"line {lineno}: expected a JSON object")
    try:
        doc_id = obj["doc_id"]
        title = obj["title"]
        chapter_no = obj["chapter_no"]
        text = obj["text"]
    except KeyError as exc:
        raise MalformedRecord(f"line {lineno}: missing field {exc}") from exc
    if not isinstance(doc_id, str) or not doc_id:
        raise MalformedRecord(f"line {lineno}: doc_id must be a non-empty string")
    if not isinstance(title, str):
        raise MalformedRecord(f"line {lineno}: title must be a string")
    if not isinstance(chapter_no, int) or isinstance(chapter_no, bool) or chapter_no < 0:
        raise MalformedRecord(f"line {lineno}: chapter_no must be an integer >= 0")
    if not isinstance(text, str):
        raise MalformedRecord(f"line {lineno}: text must be a string")
    return Document(doc_id=doc_id, title=title, chapter_no=chapter_no, raw_text=text)


def ingest_corpus(source: Path | Iterable[str], store_dir: Path) -> Corpus:
    """Ingest corpus JSONL into a persisted store; returns the loaded corpus.

    Aborts with MalformedRecord (naming the input line) or DuplicateDocument.
    """
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in source]

    documents: list[Document] = []
    seen_ids: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        doc = _parse_document_line(lineno, line)
        if doc.doc_id in seen_ids:
            raise DuplicateDocument(f"line {lineno}: duplicate doc_id {doc.doc_id!r}")
        seen_ids.add(doc.doc_id)
        documents.append(doc)

    paragraphs: list[Paragraph] = []
    for doc in documents:
        for ordinal, (ryan_number, text) in enumerate(segment_paragraphs(doc.raw_text)):
            paragraphs.append(Paragraph(
                para_id=make_para_id(doc.doc_id, ordinal),
                doc_id=doc.doc_id,
                ordinal=ordinal,
                ryan_number=ryan_number,
                text=text,
                tokens=tuple(tokenize(text)),
            ))

    index = InvertedIndex.build(paragraphs)
    stats = CorpusStats(
        paragraph_count=len(paragraphs),
        token_count=sum(len(p.tokens) for p in paragraphs),
        vocab_size=len(index.postings),
    )
    corpus = Corpus(documents, paragraphs, index, stats, store_dir=Path(store_dir))
    save_corpus(corpus, Path(store_dir))
    return corpus


def save_corpus(corpus: Corpus, store_dir: Path) -> None:
    store_dir = Path(store_dir)
    store_dir.mkdir(parents=True, exist_ok=True)
    store.write_json(store_dir / store.META_FILE, {
        "schema_version": store.SCHEMA_VERSION,
        "stats": {
            "paragraph_count": corpus.stats.paragraph_count,
            "token_count": corpus.stats.token_count,
            "vocab_size": corpus.stats.vocab_size,
        },
    })
    store.write_jsonl(store_dir / store.DOCUMENTS_FILE, (
        {"doc_id": d, "title": corpus.documents[d].title,
         "chapter_no": corpus.documents[d].chapter_no}
        for d in corpus.doc_order
    ))
    store.write_jsonl(store_dir / store.PARAGRAPHS_FILE, (
        {"para_id": p.para_id, "doc_id": p.doc_id, "ordinal": p.ordinal,
         "ryan_number": p.ryan_number, "text": p.text, "tokens": list(p.tokens)}
        for p in corpus.paragraphs
    ))
    store.write_jsonl(store_dir / store.INDEX_FILE, (
        {"token": tok, "postings": corpus.index.postings[tok]}
        for tok in sorted(corpus.index.postings)
    ))


def load_corpus(store_dir: Path) -> Corpus:
    """Reload a persisted corpus; raises StoreError naming any bad file."""
    store_dir = Path(store_dir)
    meta = store.read_json(store_dir / store.META_FILE)
    if not isinstance(meta, dict) or "stats" not in meta:
        raise StoreError(f"corrupt store file: {store_dir / store.META_FILE}: no stats")
    if meta.get("schema_version") != store.SCHEMA_VERSION:
        raise StoreError(
            f"corrupt store file: {store_dir / store.META_FILE}: "
            f"schema_version {meta.get('schema_version')!r} != {store.SCHEMA_VERSION}")

    documents = [
        Document(doc_id=rec["doc_id"], title=rec["title"],
                 chapter_no=rec["chapter_no"], raw_text="")
        for rec in store.read_jsonl(store_dir / store.DOCUMENTS_FILE)
    ]
    paragraphs = [
        Paragraph(para_id=rec["para_id"], doc_id=rec["doc_id"], ordinal=rec["ordinal"],
                  ryan_number=rec["ryan_number"], text=rec["text"], tokens=tuple(rec["tokens"]))
        for rec in store.read_jsonl(store_dir / store.PARAGRAPHS_FILE)
    ]
    postings = {
        rec["token"]: list(rec["postings"])
        for rec in store.read_jsonl(store_dir / store.INDEX_FILE)
    }
    stats = CorpusStats(
        paragraph_count=meta["stats"]["paragraph_count"],
        token_count=meta["stats"]["token_count"],
        vocab_size=meta["stats"]["vocab_size"],
    )
    return Corpus(documents, paragraphs, InvertedIndex(postings), stats, store_dir=store_dir)
