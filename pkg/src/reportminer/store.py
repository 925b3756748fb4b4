"""Layout of a store directory plus small JSON helpers.

A store is a plain directory written by the pipeline stages.  Every file is
either JSON or JSON Lines with sorted keys, so identical inputs produce
byte-identical stores.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Iterable, Iterator

SCHEMA_VERSION = 1

META_FILE = "corpus.meta"
DOCUMENTS_FILE = "documents.jsonl"
PARAGRAPHS_FILE = "paragraphs.jsonl"
INDEX_FILE = "index.jsonl"
ANNOTATIONS_FILE = "annotations.jsonl"
MENTIONS_FILE = "mentions.jsonl"
ENTITIES_FILE = "entities.jsonl"
TRANSFERS_FILE = "transfers.jsonl"
TRANSFER_EXCEPTIONS_FILE = "transfers.exceptions.jsonl"
FOREST_FILE = "forest.json"
MODELS_DIR = "models"
LEXICONS_DIR = "lexicons"
GRAPHS_DIR = "graphs"
RULES_DIR = "rules"


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def write_json(path: Path, obj: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj) + "\n", encoding="utf-8")


def read_json(path: Path) -> Any:
    from .errors import StoreError

    if not path.exists():
        raise StoreError(f"missing store file: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise StoreError(f"corrupt store file: {path}: {exc}") from exc


def write_jsonl(path: Path, records: Iterable[Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(dumps(rec) + "\n")


def read_jsonl(path: Path) -> Iterator[Any]:
    from .errors import StoreError

    if not path.exists():
        raise StoreError(f"missing store file: {path}")
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except ValueError as exc:
                raise StoreError(f"corrupt store file: {path} line {lineno}: {exc}") from exc


def hash_tree(root: Path) -> str:
    """SHA-256 over every file's relative path and bytes, in sorted order."""
    digest = hashlib.sha256()
    for path in sorted(p for p in Path(root).rglob("*") if p.is_file()):
        digest.update(str(path.relative_to(root)).encode("utf-8"))
        digest.update(b"\x00")
        digest.update(path.read_bytes())
        digest.update(b"\x01")
    return digest.hexdigest()
