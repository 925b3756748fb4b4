"""Command-line pipeline: every stage, plus fixture generation and serving.

Each stage is a pure function of (inputs, config, seed) writing into a store
directory, so `pipeline` equals running the stages one by one.  Options win
over the --config file, which wins over built-in defaults.  Relative paths in
a config file are resolved against the config file's directory.
"""

import json
import sys
from pathlib import Path

import click

from . import store
from .annotate import (ForestConfig, LabeledExample, annotate_corpus, extract_features,
                       feature_names, lexicon_fingerprint, load_annotations, load_forest,
                       load_patterns, save_annotations, save_forest, train_forest)
from .corpus import Corpus, ingest_corpus, load_corpus
from .embedding import (EmbeddingConfig, Lexicon, LexiconConfig, expand_lexicon,
                        load_lexicon, load_model, save_lexicon, save_model,
                        train_ensemble)
from .entities import (build_registry, extract_all_mentions, load_gazetteer,
                       load_mentions, load_title_rules, save_mentions, save_registry)
from .errors import MissingArtifact, ReportMinerError
from .fixture import generate_fixture
from .networks import (build_collocation_network, build_communication_network,
                       extract_communications, write_edge_csv, write_graph_json)
from .transfers import (extract_transfer_events, itemize, mine_rules, save_events,
                        save_rules_csv, save_rules_json)
from .entities import dominant_entity_types

_EMBED_DEFAULTS = dict(dim=100, window=5, negatives=5, epochs=15, min_count=3,
                       initial_learning_rate=0.025)
_LEXICON_DEFAULTS = dict(ensemble_count=5, top_n=30, include_seeds=True)
_FOREST_DEFAULTS = dict(n_trees=100, max_depth=12, min_leaf=2, features_per_split=None)


# --- config handling -----------------------------------------------------

def _load_config(config_path: str | None) -> dict:
    if not config_path:
        return {}
    path = Path(config_path)
    cfg = json.loads(path.read_text(encoding="utf-8"))
    cfg["_base"] = path.parent
    return cfg


def _cfg_path(cfg: dict, key: str, flag_value: str | None) -> Path | None:
    if flag_value is not None:
        return Path(flag_value)
    value = cfg.get(key)
    if value is None:
        return None
    path = Path(value)
    if not path.is_absolute() and "_base" in cfg:
        path = cfg["_base"] / path
    return path


def _require_path(cfg: dict, key: str, flag_value: str | None, what: str) -> Path:
    path = _cfg_path(cfg, key, flag_value)
    if path is None:
        raise click.UsageError(f"missing {what}: pass --{key} or set {key!r} in --config")
    return path


def _require_store(store_dir: Path, needed: str, producer: str) -> None:
    if not (store_dir / needed).exists():
        raise MissingArtifact(
            f"store is missing {needed}: run the {producer!r} stage first")


# --- stage functions -----------------------------------------------------

def stage_ingest(corpus_path: Path, store_dir: Path) -> Corpus:
    return ingest_corpus(corpus_path, store_dir)


def stage_train_embeddings(store_dir: Path, emb_cfg: EmbeddingConfig,
                           lexcfg: LexiconConfig) -> int:
    _require_store(store_dir, store.META_FILE, "ingest")
    corpus = load_corpus(store_dir)
    models = train_ensemble(corpus, emb_cfg, lexcfg)
    for i, model in enumerate(models):
        save_model(model, store_dir / store.MODELS_DIR / f"member_{i:02d}")
    return len(models)


def load_ensemble(store_dir: Path):
    models_dir = store_dir / store.MODELS_DIR
    bases = sorted({p.stem for p in models_dir.glob("member_*.vec")}) \
        if models_dir.is_dir() else []
    if not bases:
        raise MissingArtifact(
            "store has no embedding models: run the 'train-embeddings' stage first")
    return [load_model(models_dir / base) for base in bases]


def stage_expand_lexicon(store_dir: Path, name: str, seed_terms: list[str],
                         lexcfg: LexiconConfig) -> Lexicon:
    models = load_ensemble(store_dir)
    cfg = LexiconConfig(seed_terms=tuple(seed_terms),
                        ensemble_count=min(lexcfg.ensemble_count, len(models)),
                        top_n=lexcfg.top_n, include_seeds=lexcfg.include_seeds)
    lexicon = expand_lexicon(models[:cfg.ensemble_count], cfg, name=name)
    save_lexicon(lexicon, store_dir / store.LEXICONS_DIR / f"{name}.json", config=cfg)
    return lexicon


def _load_store_lexicons(store_dir: Path, names: list[str]) -> list[Lexicon]:
    lexicons = []
    for name in names:
        path = store_dir / store.LEXICONS_DIR / f"{name}.json"
        if not path.exists():
            raise MissingArtifact(
                f"store has no lexicon {name!r}: run the 'expand-lexicon' stage first")
        lexicons.append(load_lexicon(path))
    return lexicons


def _read_seed_file(path: Path) -> list[str]:
    return [line.strip() for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip()]


def stage_train_forest(store_dir: Path, labels_path: Path,
                       feature_lexicons: list[str], forest_cfg: ForestConfig):
    _require_store(store_dir, store.META_FILE, "ingest")
    corpus = load_corpus(store_dir)
    lexicons = _load_store_lexicons(store_dir, feature_lexicons)
    examples = []
    for rec in store.read_jsonl(labels_path):
        para = corpus.paragraph(rec["para_id"])
        examples.append(LabeledExample(rec["para_id"],
                                       extract_features(para, lexicons), rec["label"]))
    model = train_forest(
        examples, forest_cfg, feature_names=feature_names(lexicons),
        lexicon_hashes={lex.name: lexicon_fingerprint(lex) for lex in lexicons})
    save_forest(model, store_dir / store.FOREST_FILE)
    return model


def stage_annotate(store_dir: Path, patterns_path: Path,
                   feature_lexicons: list[str], threshold: float) -> int:
    _require_store(store_dir, store.META_FILE, "ingest")
    _require_store(store_dir, store.FOREST_FILE, "train-forest")
    corpus = load_corpus(store_dir)
    model = load_forest(store_dir / store.FOREST_FILE)
    lexicons = _load_store_lexicons(store_dir, feature_lexicons)
    for lex in lexicons:
        stored = model.lexicon_hashes.get(lex.name)
        if stored is not None and stored != lexicon_fingerprint(lex):
            raise ReportMinerError(
                f"lexicon {lex.name!r} changed since the forest was trained; retrain")
    patterns = load_patterns(patterns_path)
    annotations = annotate_corpus(corpus, model, lexicons, patterns, threshold)
    save_annotations(annotations, store_dir / store.ANNOTATIONS_FILE)
    return len(annotations)


def stage_extract_entities(store_dir: Path, gazetteer_path: Path,
                           titles_path: Path) -> tuple[int, int]:
    _require_store(store_dir, store.META_FILE, "ingest")
    corpus = load_corpus(store_dir)
    gazetteer = load_gazetteer(gazetteer_path)
    titles = load_title_rules(titles_path)
    mentions = extract_all_mentions(corpus, gazetteer, titles)
    save_mentions(mentions, store_dir / store.MENTIONS_FILE)
    registry = build_registry(corpus, mentions)
    save_registry(registry, store_dir / store.ENTITIES_FILE)
    return len(mentions), len(registry.entities)


def stage_build_networks(store_dir: Path, communication_lexicon: str) -> tuple[int, int]:
    _require_store(store_dir, store.META_FILE, "ingest")
    _require_store(store_dir, store.MENTIONS_FILE, "extract-entities")
    corpus = load_corpus(store_dir)
    mentions = load_mentions(store_dir / store.MENTIONS_FILE)
    colloc = build_collocation_network(corpus, mentions)
    write_graph_json(colloc, store_dir / store.GRAPHS_DIR / "collocation.json")
    write_edge_csv(colloc, store_dir / store.GRAPHS_DIR / "collocation.csv")
    comm_lex = _load_store_lexicons(store_dir, [communication_lexicon])[0]
    excerpts = extract_communications(corpus, comm_lex, mentions)
    comm = build_communication_network(excerpts, dominant_entity_types(mentions))
    write_graph_json(comm, store_dir / store.GRAPHS_DIR / "communication.json")
    write_edge_csv(comm, store_dir / store.GRAPHS_DIR / "communication.csv")
    return colloc.edge_count, comm.edge_count


def stage_mine_transfers(store_dir: Path, min_support: float, min_confidence: float,
                         max_itemset_size: int) -> tuple[int, int, int]:
    _require_store(store_dir, store.META_FILE, "ingest")
    _require_store(store_dir, store.ANNOTATIONS_FILE, "annotate")
    _require_store(store_dir, store.MENTIONS_FILE, "extract-entities")
    corpus = load_corpus(store_dir)
    annotations = load_annotations(store_dir / store.ANNOTATIONS_FILE)
    mentions = load_mentions(store_dir / store.MENTIONS_FILE)
    events, exceptions = extract_transfer_events(corpus, annotations, mentions)
    save_events(events, store_dir / store.TRANSFERS_FILE)
    store.write_jsonl(store_dir / store.TRANSFER_EXCEPTIONS_FILE, exceptions)
    transactions = itemize(events)
    rules = mine_rules(transactions, min_support, min_confidence, max_itemset_size) \
        if transactions else []
    save_rules_json(rules, store_dir / store.RULES_DIR / "transfers.json")
    save_rules_csv(rules, store_dir / store.RULES_DIR / "transfers.csv")
    return len(events), len(exceptions), len(rules)


# --- config to dataclasses -----------------------------------------------

def _embedding_config(cfg: dict, seed: int, **overrides) -> EmbeddingConfig:
    merged = {**_EMBED_DEFAULTS, **cfg.get("embedding", {})}
    merged.update({k: v for k, v in overrides.items() if v is not None})
    merged.pop("rng_seed", None)
    return EmbeddingConfig(rng_seed=seed, **merged)


def _lexicon_config(cfg: dict, seed_terms=("placeholder",), **overrides) -> LexiconConfig:
    merged = {**_LEXICON_DEFAULTS, **cfg.get("lexicon", {})}
    merged.update({k: v for k, v in overrides.items() if v is not None})
    merged.pop("seed_terms", None)
    return LexiconConfig(seed_terms=tuple(seed_terms), **merged)


def _forest_config(cfg: dict, seed: int, **overrides) -> ForestConfig:
    merged = {**_FOREST_DEFAULTS, **cfg.get("forest", {})}
    merged.update({k: v for k, v in overrides.items() if v is not None})
    merged.pop("rng_seed", None)
    return ForestConfig(rng_seed=seed, **merged)


def _seed(cfg: dict, flag: int | None) -> int:
    if flag is not None:
        return flag
    return int(cfg.get("seed", 7))


# --- click wiring --------------------------------------------------------

@click.group()
def main():
    """Inquiry-report corpus mining pipeline."""


def _common(f):
    f = click.option("--config", "config_path", default=None,
                     help="JSON config file; flags win over it.")(f)
    f = click.option("--seed", type=int, default=None,
                     help="Deterministic RNG seed for this run.")(f)
    return f


@main.command("gen-fixture")
@_common
@click.option("--out", required=True, help="Output directory for the fixture.")
@click.option("--paragraphs", type=int, default=200, show_default=True)
def gen_fixture_cmd(config_path, seed, out, paragraphs):
    """Generate the synthetic corpus, sidecar files and manifest."""
    cfg = _load_config(config_path)
    manifest = generate_fixture(Path(out), paragraphs=paragraphs, seed=_seed(cfg, seed))
    click.echo(f"fixture: {manifest['counts']['paragraphs']} paragraphs, "
               f"{manifest['counts']['documents']} documents -> {out}")


@main.command("ingest")
@_common
@click.option("--corpus", "corpus_path", default=None, help="Corpus JSONL input.")
@click.option("--store", "store_dir", default=None, help="Store directory to create.")
def ingest_cmd(config_path, seed, corpus_path, store_dir):
    """Segment, tokenize and index the corpus into a store directory."""
    cfg = _load_config(config_path)
    corpus = stage_ingest(_require_path(cfg, "corpus", corpus_path, "corpus input"),
                          _require_path(cfg, "store", store_dir, "store directory"))
    s = corpus.stats
    click.echo(f"ingested {s.paragraph_count} paragraphs, {s.token_count} tokens, "
               f"vocab {s.vocab_size}")


@main.command("train-embeddings")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--members", type=int, default=None, help="Ensemble size.")
@click.option("--dim", type=int, default=None)
@click.option("--epochs", type=int, default=None)
def train_embeddings_cmd(config_path, seed, store_dir, members, dim, epochs):
    """Train the embedding ensemble (seeds rng_seed+0 .. +k-1)."""
    cfg = _load_config(config_path)
    emb = _embedding_config(cfg, _seed(cfg, seed), dim=dim, epochs=epochs)
    lexcfg = _lexicon_config(cfg, ensemble_count=members)
    n = stage_train_embeddings(_require_path(cfg, "store", store_dir, "store directory"),
                               emb, lexcfg)
    click.echo(f"trained {n} ensemble members (dim={emb.dim}, epochs={emb.epochs})")


@main.command("expand-lexicon")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--name", required=True, help="Lexicon name.")
@click.option("--seeds", "seeds_path", required=True, help="Seed terms, one per line.")
@click.option("--top-n", type=int, default=None)
def expand_lexicon_cmd(config_path, seed, store_dir, name, seeds_path, top_n):
    """Expand seed terms into a consensus lexicon over the ensemble."""
    cfg = _load_config(config_path)
    lexcfg = _lexicon_config(cfg, seed_terms=_read_seed_file(Path(seeds_path)),
                             top_n=top_n)
    lexicon = stage_expand_lexicon(
        _require_path(cfg, "store", store_dir, "store directory"), name,
        list(lexcfg.seed_terms), lexcfg)
    click.echo(f"lexicon {name!r}: {len(lexicon.terms)} terms "
               f"from {len(lexicon.seed_terms)} seeds")


@main.command("train-forest")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--labels", "labels_path", default=None, help="Training labels JSONL.")
@click.option("--lexicons", "lexicon_names", default=None,
              help="Comma-separated feature lexicon names, in order.")
@click.option("--trees", type=int, default=None)
def train_forest_cmd(config_path, seed, store_dir, labels_path, lexicon_names, trees):
    """Train the random forest on lexicon-derived features."""
    cfg = _load_config(config_path)
    names = lexicon_names.split(",") if lexicon_names \
        else list(cfg.get("feature_lexicons", []))
    if not names:
        raise click.UsageError("no feature lexicons given (--lexicons or config)")
    model = stage_train_forest(
        _require_path(cfg, "store", store_dir, "store directory"),
        _require_path(cfg, "labels", labels_path, "training labels"),
        names, _forest_config(cfg, _seed(cfg, seed) + 1, n_trees=trees))
    oob = "n/a" if model.oob_accuracy is None else f"{model.oob_accuracy:.3f}"
    click.echo(f"forest: {model.config.n_trees} trees, labels {model.labels}, OOB {oob}")


@main.command("annotate")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--patterns", "patterns_path", default=None, help="Rule patterns JSON.")
@click.option("--threshold", type=float, default=None)
def annotate_cmd(config_path, seed, store_dir, patterns_path, threshold):
    """Attach rule and forest labels to every paragraph."""
    cfg = _load_config(config_path)
    names = list(cfg.get("feature_lexicons", []))
    if not names:
        raise click.UsageError("config must list feature_lexicons for annotation")
    t = threshold if threshold is not None else float(cfg.get("annotate_threshold", 0.5))
    n = stage_annotate(_require_path(cfg, "store", store_dir, "store directory"),
                       _require_path(cfg, "patterns", patterns_path, "rule patterns"),
                       names, t)
    click.echo(f"wrote {n} annotations (threshold {t})")


@main.command("extract-entities")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--gazetteer", "gazetteer_path", default=None)
@click.option("--titles", "titles_path", default=None)
def extract_entities_cmd(config_path, seed, store_dir, gazetteer_path, titles_path):
    """Recognize entity mentions and build the canonical registry."""
    cfg = _load_config(config_path)
    n_mentions, n_entities = stage_extract_entities(
        _require_path(cfg, "store", store_dir, "store directory"),
        _require_path(cfg, "gazetteer", gazetteer_path, "gazetteer CSV"),
        _require_path(cfg, "titles", titles_path, "title rules file"))
    click.echo(f"extracted {n_mentions} mentions of {n_entities} entities")


@main.command("build-networks")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--communication-lexicon", "comm_name", default=None)
def build_networks_cmd(config_path, seed, store_dir, comm_name):
    """Build the collocation and communication networks."""
    cfg = _load_config(config_path)
    name = comm_name or cfg.get("communication_lexicon", "communication")
    colloc_edges, comm_edges = stage_build_networks(
        _require_path(cfg, "store", store_dir, "store directory"), name)
    click.echo(f"collocation: {colloc_edges} edges; communication: {comm_edges} edges")


@main.command("mine-transfers")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--min-support", type=float, default=None)
@click.option("--min-confidence", type=float, default=None)
@click.option("--max-itemset-size", type=int, default=None)
def mine_transfers_cmd(config_path, seed, store_dir, min_support, min_confidence,
                       max_itemset_size):
    """Extract transfer events and mine association rules over them."""
    cfg = _load_config(config_path)
    n_events, n_exceptions, n_rules = stage_mine_transfers(
        _require_path(cfg, "store", store_dir, "store directory"),
        min_support if min_support is not None else float(cfg.get("min_support", 0.05)),
        min_confidence if min_confidence is not None
        else float(cfg.get("min_confidence", 0.6)),
        max_itemset_size if max_itemset_size is not None
        else int(cfg.get("max_itemset_size", 4)))
    click.echo(f"{n_events} events ({n_exceptions} exceptions), {n_rules} rules")


@main.command("serve")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8571, show_default=True)
@click.option("--cors-origin", default="*", show_default=True)
def serve_cmd(config_path, seed, store_dir, host, port, cors_origin):
    """Serve the read-only API over a store directory."""
    from .service import serve

    cfg = _load_config(config_path)
    serve(_require_path(cfg, "store", store_dir, "store directory"),
          host=host, port=port, cors_origin=cors_origin)


@main.command("pipeline")
@_common
@click.option("--store", "store_dir", default=None)
@click.option("--corpus", "corpus_path", default=None)
def pipeline_cmd(config_path, seed, store_dir, corpus_path):
    """Run ingest through mine-transfers in order."""
    cfg = _load_config(config_path)
    run_pipeline(cfg, _seed(cfg, seed),
                 store_dir=_cfg_path(cfg, "store", store_dir),
                 corpus_path=_cfg_path(cfg, "corpus", corpus_path))


def run_pipeline(cfg: dict, seed: int, store_dir: Path | None = None,
                 corpus_path: Path | None = None) -> Path:
    if store_dir is None:
        store_dir = _require_path(cfg, "store", None, "store directory")
    if corpus_path is None:
        corpus_path = _require_path(cfg, "corpus", None, "corpus input")
    emb = _embedding_config(cfg, seed)
    lexcfg_base = _lexicon_config(cfg)
    forest_cfg = _forest_config(cfg, seed + 1)

    corpus = stage_ingest(corpus_path, store_dir)
    click.echo(f"[1/8] ingest: {corpus.stats.paragraph_count} paragraphs")
    n = stage_train_embeddings(store_dir, emb, lexcfg_base)
    click.echo(f"[2/8] embeddings: {n} members")
    seeds_map = cfg.get("lexicon_seeds", {})
    if not seeds_map:
        raise click.UsageError("config must map lexicon names to seed files "
                               "(lexicon_seeds)")
    for name in sorted(seeds_map):
        path = Path(seeds_map[name])
        if not path.is_absolute() and "_base" in cfg:
            path = cfg["_base"] / path
        lexicon = stage_expand_lexicon(store_dir, name, _read_seed_file(path),
                                       lexcfg_base)
        click.echo(f"[3/8] lexicon {name}: {len(lexicon.terms)} terms")
    feature_lexicons = list(cfg.get("feature_lexicons", []))
    model = stage_train_forest(store_dir, _require_path(cfg, "labels", None,
                                                        "training labels"),
                               feature_lexicons, forest_cfg)
    oob = "n/a" if model.oob_accuracy is None else f"{model.oob_accuracy:.3f}"
    click.echo(f"[4/8] forest OOB accuracy: {oob}")
    n = stage_annotate(store_dir, _require_path(cfg, "patterns", None, "rule patterns"),
                       feature_lexicons, float(cfg.get("annotate_threshold", 0.5)))
    click.echo(f"[5/8] annotations: {n}")
    n_mentions, n_entities = stage_extract_entities(
        store_dir, _require_path(cfg, "gazetteer", None, "gazetteer CSV"),
        _require_path(cfg, "titles", None, "title rules file"))
    click.echo(f"[6/8] entities: {n_mentions} mentions, {n_entities} canonical")
    colloc_edges, comm_edges = stage_build_networks(
        store_dir, cfg.get("communication_lexicon", "communication"))
    click.echo(f"[7/8] networks: {colloc_edges} collocation edges, "
               f"{comm_edges} communication edges")
    n_events, n_exc, n_rules = stage_mine_transfers(
        store_dir, float(cfg.get("min_support", 0.05)),
        float(cfg.get("min_confidence", 0.6)), int(cfg.get("max_itemset_size", 4)))
    click.echo(f"[8/8] transfers: {n_events} events ({n_exc} exceptions), "
               f"{n_rules} rules")
    return store_dir


def entry() -> None:
    try:
        main(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code or 1)
    except click.Abort:
        sys.exit(130)
    except ReportMinerError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    entry()
