"""Read-only HTTP API over a store directory.

Everything is loaded into memory at startup and never mutated; requests only
read.  Search is conjunctive: a paragraph must contain every query token and
satisfy every present facet (label, entity, chapter).  Matched tokens in
snippets are wrapped in [[ ]].
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import store
from .annotate import Annotation, load_annotations
from .corpus import Corpus, load_corpus, tokenize, _TOKEN_RE
from .entities import EntityRegistry, build_registry, entity_timeline, load_mentions
from .errors import EmptyQuery, UnknownEntity
from .networks import Graph, graph_to_dict, load_graph
from .transfers import TransferEvent, flow_counts, load_events

MAX_PAGE_SIZE = 200
DEFAULT_PAGE_SIZE = 20


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.error = error
        self.detail = detail


@dataclass
class SearchQuery:
    q: str | None = None
    label: str | None = None
    entity: str | None = None
    chapter: int | None = None
    page: int = 1
    page_size: int = DEFAULT_PAGE_SIZE


@dataclass
class AppData:
    corpus: Corpus
    annotations: list[Annotation] | None = None
    registry: EntityRegistry | None = None
    mentions_by_para: dict[str, list] | None = None
    collocation: Graph | None = None
    communication: Graph | None = None
    rules: list[dict] | None = None
    events: list[TransferEvent] | None = None
    lexicons: dict[str, Any] | None = None

    def __post_init__(self):
        self.labels_by_para: dict[str, list[Annotation]] = {}
        self.paras_by_label: dict[str, set[str]] = {}
        if self.annotations:
            for ann in self.annotations:
                self.labels_by_para.setdefault(ann.para_id, []).append(ann)
                self.paras_by_label.setdefault(ann.label, set()).add(ann.para_id)
        self.paras_by_entity: dict[str, set[str]] = {}
        if self.mentions_by_para:
            for para_id, ms in self.mentions_by_para.items():
                for m in ms:
                    self.paras_by_entity.setdefault(m.canonical_id, set()).add(para_id)
        # pagination order for every result set: (chapter_no, ordinal)
        self.sort_key = {
            p.para_id: (self.corpus.documents[p.doc_id].chapter_no, p.ordinal)
            for p in self.corpus.paragraphs
        }


def load_app_data(store_dir: Path) -> AppData:
    store_dir = Path(store_dir)
    corpus = load_corpus(store_dir)

    annotations = None
    if (store_dir / store.ANNOTATIONS_FILE).exists():
        annotations = load_annotations(store_dir / store.ANNOTATIONS_FILE)

    registry = None
    mentions_by_para = None
    if (store_dir / store.MENTIONS_FILE).exists():
        mentions = load_mentions(store_dir / store.MENTIONS_FILE)
        registry = build_registry(corpus, mentions)
        mentions_by_para = {}
        for m in mentions:
            mentions_by_para.setdefault(m.para_id, []).append(m)

    def opt_graph(name: str) -> Graph | None:
        path = store_dir / store.GRAPHS_DIR / f"{name}.json"
        return load_graph(path) if path.exists() else None

    rules = None
    rules_path = store_dir / store.RULES_DIR / "transfers.json"
    if rules_path.exists():
        rules = store.read_json(rules_path)

    events = None
    if (store_dir / store.TRANSFERS_FILE).exists():
        events = load_events(store_dir / store.TRANSFERS_FILE)

    lexicons = None
    lex_dir = store_dir / store.LEXICONS_DIR
    if lex_dir.is_dir():
        lexicons = {}
        for path in sorted(lex_dir.glob("*.json")):
            payload = store.read_json(path)
            lexicons[payload["name"]] = payload

    return AppData(corpus=corpus, annotations=annotations, registry=registry,
                   mentions_by_para=mentions_by_para,
                   collocation=opt_graph("collocation"),
                   communication=opt_graph("communication"),
                   rules=rules, events=events, lexicons=lexicons)


def mark_snippet(text: str, query_tokens: set[str]) -> str:
    """Wrap every occurrence of a query token in [[ ]]."""
    if not query_tokens:
        return text
    return _TOKEN_RE.sub(
        lambda m: f"[[{m.group()}]]" if m.group().lower() in query_tokens else m.group(),
        text)


def search(data: AppData, query: SearchQuery) -> dict:
    """Conjunctive index search with facet filters and deterministic paging."""
    if query.page < 1:
        raise ValueError("page must be >= 1")
    if not 1 <= query.page_size <= MAX_PAGE_SIZE:
        raise ValueError(f"page_size must be in [1, {MAX_PAGE_SIZE}]")
    if query.q is None and query.label is None and query.entity is None \
            and query.chapter is None:
        raise EmptyQuery("at least one of q, label, entity, chapter is required")

    candidates: set[str] | None = None

    def narrow(ids: set[str]) -> None:
        nonlocal candidates
        candidates = ids if candidates is None else candidates & ids

    q_tokens: set[str] = set()
    if query.q is not None:
        q_tokens = set(tokenize(query.q))
        hit: set[str] | None = None
        for tok in sorted(q_tokens):
            postings = set(data.corpus.index.postings.get(tok, ()))
            hit = postings if hit is None else hit & postings
        narrow(hit if hit is not None else set())
    if query.label is not None:
        narrow(data.paras_by_label.get(query.label, set()))
    if query.entity is not None:
        narrow(data.paras_by_entity.get(query.entity, set()))
    if query.chapter is not None:
        narrow({p.para_id for p in data.corpus.paragraphs
                if data.corpus.documents[p.doc_id].chapter_no == query.chapter})

    ordered = sorted(candidates or (), key=lambda pid: data.sort_key[pid])
    total = len(ordered)
    lo = (query.page - 1) * query.page_size
    page_ids = ordered[lo:lo + query.page_size]

    hits = []
    for pid in page_ids:
        para = data.corpus.paragraph(pid)
        hits.append({
            "para_id": pid,
            "doc_id": para.doc_id,
            "ryan_number": para.ryan_number,
            "snippet": mark_snippet(para.text, q_tokens),
            "labels": sorted({a.label for a in data.labels_by_para.get(pid, [])}),
            "entities": sorted({m.canonical_id
                                for m in (data.mentions_by_para or {}).get(pid, [])}),
        })
    return {"total": total, "page": query.page, "page_size": query.page_size,
            "hits": hits}


def create_app(store_dir: Path, cors_origin: str = "*") -> FastAPI:
    data = load_app_data(store_dir)
    app = FastAPI(title="reportminer", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=[cors_origin],
                       allow_methods=["GET"], allow_headers=["*"])

    @app.exception_handler(ApiError)
    async def _api_error(_: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"error": exc.error, "detail": exc.detail})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "bad_request", "detail": str(exc.errors())})

    def require(artifact, name: str):
        if artifact is None:
            raise ApiError(404, "artifact_missing",
                           f"{name} has not been computed for this store")
        return artifact

    @app.get("/api/stats")
    def stats():
        s = data.corpus.stats
        return {"paragraph_count": s.paragraph_count, "token_count": s.token_count,
                "vocab_size": s.vocab_size}

    @app.get("/api/paragraphs")
    def paragraphs(q: str | None = None, label: str | None = None,
                   entity: str | None = None, chapter: int | None = None,
                   page: int = 1, page_size: int = DEFAULT_PAGE_SIZE):
        query = SearchQuery(q=q, label=label, entity=entity, chapter=chapter,
                            page=page, page_size=page_size)
        try:
            return search(data, query)
        except EmptyQuery as exc:
            raise ApiError(400, "empty_query", str(exc)) from exc
        except ValueError as exc:
            raise ApiError(400, "bad_request", str(exc)) from exc

    @app.get("/api/paragraphs/{para_id}")
    def paragraph(para_id: str):
        if para_id not in data.corpus:
            raise ApiError(404, "unknown_paragraph", f"no paragraph {para_id!r}")
        para = data.corpus.paragraph(para_id)
        doc = data.corpus.documents[para.doc_id]
        return {
            "para_id": para.para_id, "doc_id": para.doc_id, "ordinal": para.ordinal,
            "chapter_no": doc.chapter_no, "doc_title": doc.title,
            "ryan_number": para.ryan_number, "text": para.text,
            "annotations": [
                {"label": a.label, "source": a.source, "confidence": a.confidence}
                for a in data.labels_by_para.get(para_id, [])
            ],
            "mentions": [
                {"start": m.start, "end": m.end, "surface": m.surface,
                 "entity_type": m.entity_type, "canonical_id": m.canonical_id}
                for m in (data.mentions_by_para or {}).get(para_id, [])
            ],
        }

    @app.get("/api/entities")
    def entities_list(type: str | None = None, page: int = 1,
                      page_size: int = DEFAULT_PAGE_SIZE):
        registry = require(data.registry, "entity registry")
        if page < 1 or not 1 <= page_size <= MAX_PAGE_SIZE:
            raise ApiError(400, "bad_request", "bad page or page_size")
        rows = [e for e in registry.entities.values()
                if type is None or e.entity_type == type]
        rows.sort(key=lambda e: (-e.mention_count, e.canonical_id))
        lo = (page - 1) * page_size
        return {"total": len(rows), "page": page, "page_size": page_size,
                "entities": [_entity_json(e) for e in rows[lo:lo + page_size]]}

    @app.get("/api/entities/{canonical_id}")
    def entity_detail(canonical_id: str):
        registry = require(data.registry, "entity registry")
        if canonical_id not in registry.entities:
            raise ApiError(404, "unknown_entity", f"no entity {canonical_id!r}")
        return _entity_json(registry.entities[canonical_id])

    @app.get("/api/entities/{canonical_id}/timeline")
    def timeline(canonical_id: str):
        registry = require(data.registry, "entity registry")
        try:
            hops = entity_timeline(registry, canonical_id)
        except UnknownEntity as exc:
            raise ApiError(404, "unknown_entity", str(exc)) from exc
        return {"canonical_id": canonical_id, "hops": hops}

    @app.get("/api/networks/collocation")
    def collocation(min_weight: int = 1):
        return graph_to_dict(require(data.collocation, "collocation network"),
                             min_weight=min_weight)

    @app.get("/api/networks/communication")
    def communication(min_weight: int = 1):
        return graph_to_dict(require(data.communication, "communication network"),
                             min_weight=min_weight)

    @app.get("/api/rules/transfers")
    def transfer_rules(min_support: float = 0.0, min_confidence: float = 0.0):
        rules = require(data.rules, "transfer rules")
        return {"rules": [r for r in rules
                          if r["support"] >= min_support
                          and r["confidence"] >= min_confidence]}

    @app.get("/api/transfers/flows")
    def flows():
        events = require(data.events, "transfer events")
        counts = flow_counts(events)
        return {"flows": [
            {"from": a, "to": b, "count": counts[(a, b)]}
            for a, b in sorted(counts)
        ]}

    @app.get("/api/lexicons")
    def lexicons_list():
        lexicons = require(data.lexicons, "lexicons")
        return {"lexicons": [
            {"name": name, "seed_terms": payload["seed_terms"],
             "size": len(payload["terms"])}
            for name, payload in sorted(lexicons.items())
        ]}

    @app.get("/api/lexicons/{name}")
    def lexicon_detail(name: str):
        lexicons = require(data.lexicons, "lexicons")
        if name not in lexicons:
            raise ApiError(404, "unknown_lexicon", f"no lexicon {name!r}")
        return lexicons[name]

    return app


def _entity_json(entity) -> dict:
    return {"canonical_id": entity.canonical_id, "display_name": entity.display_name,
            "entity_type": entity.entity_type, "mention_count": entity.mention_count,
            "documents": list(entity.documents)}


def serve(store_dir: Path, host: str = "127.0.0.1", port: int = 8571,
          cors_origin: str = "*") -> None:
    """Run the API with uvicorn until interrupted."""
    import uvicorn

    uvicorn.run(create_app(store_dir, cors_origin=cors_origin), host=host, port=port)
