"""Shared workspace setup for the demo scripts.

Each demo is runnable on its own: the first one to run builds a small fixture
corpus and pipeline store under ./demo_workspace, later ones reuse it.
The embedding config is scaled down so every demo finishes in seconds.
"""

import json
from pathlib import Path

WORKSPACE = Path(__file__).resolve().parent.parent / "demo_workspace"
STORE = WORKSPACE / "store"

DEMO_CONFIG = {
    "embedding": {"dim": 32, "window": 5, "negatives": 5, "epochs": 6,
                  "min_count": 3, "initial_learning_rate": 0.025},
    "lexicon": {"ensemble_count": 3, "top_n": 20, "include_seeds": True},
    "forest": {"n_trees": 60, "max_depth": 12, "min_leaf": 2,
               "features_per_split": None},
}


def ensure_store() -> Path:
    """Generate the fixture and run the pipeline once, then reuse it."""
    if (STORE / "rules" / "transfers.json").exists():
        return STORE

    from click.testing import CliRunner
    from reportminer import cli
    from reportminer.fixture import generate_fixture

    WORKSPACE.mkdir(exist_ok=True)
    if not (WORKSPACE / "manifest.json").exists():
        print("generating fixture corpus ...")
        generate_fixture(WORKSPACE, paragraphs=200, seed=7)
    cfg = json.loads((WORKSPACE / "pipeline.json").read_text())
    cfg.update(DEMO_CONFIG)
    (WORKSPACE / "pipeline.json").write_text(json.dumps(cfg, indent=1))

    print("running the pipeline (once; later demos reuse the store) ...")
    runner = CliRunner()
    result = runner.invoke(cli.main,
                           ["pipeline", "--config", str(WORKSPACE / "pipeline.json")],
                           catch_exceptions=False)
    print(result.output)
    assert result.exit_code == 0
    return STORE


def manifest() -> dict:
    from reportminer.fixture import load_manifest

    ensure_store()
    return load_manifest(WORKSPACE)
