import pytest
from click.testing import CliRunner

from reportminer import cli
from reportminer.annotate import load_annotations
from reportminer.corpus import ingest_corpus, load_corpus
from reportminer.embedding import Lexicon
from reportminer.entities import load_mentions
from reportminer.fixture import generate_fixture, load_manifest
from reportminer import store as store_mod

FIXTURE_SEED = 7
FIXTURE_PARAGRAPHS = 200


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixture")
    generate_fixture(out, paragraphs=FIXTURE_PARAGRAPHS, seed=FIXTURE_SEED)
    return out


@pytest.fixture(scope="session")
def manifest(fixture_dir):
    return load_manifest(fixture_dir)


@pytest.fixture(scope="session")
def pipeline_store(fixture_dir):
    """Store produced by one full CLI pipeline run over the fixture."""
    runner = CliRunner()
    result = runner.invoke(cli.main,
                           ["pipeline", "--config", str(fixture_dir / "pipeline.json")],
                           catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return fixture_dir / "store"


@pytest.fixture(scope="session")
def corpus(pipeline_store):
    return load_corpus(pipeline_store)


@pytest.fixture(scope="session")
def ensemble(pipeline_store):
    return cli.load_ensemble(pipeline_store)


@pytest.fixture(scope="session")
def store_mentions(pipeline_store):
    return load_mentions(pipeline_store / store_mod.MENTIONS_FILE)


@pytest.fixture(scope="session")
def store_annotations(pipeline_store):
    return load_annotations(pipeline_store / store_mod.ANNOTATIONS_FILE)


@pytest.fixture(scope="session")
def category_lexicons(manifest):
    """Ground-truth category lexicons straight from the manifest vocabularies."""
    return [Lexicon(name=label, seed_terms=set(), terms=set(vocab))
            for label, vocab in sorted(manifest["category_vocab"].items())]


def make_corpus(tmp_path, docs):
    """Ingest a list of (doc_id, chapter_no, text) into a throwaway store."""
    import json

    lines = [json.dumps({"doc_id": d, "title": d, "chapter_no": c, "text": t})
             for d, c, t in docs]
    return ingest_corpus(lines, tmp_path / "store")
