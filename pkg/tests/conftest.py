"""Shared fixtures: demo corpus, reference-toolchain availability, dataset root."""

from __future__ import annotations

import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest

from jsstylo.synthgen import DEFAULT_MODELS, make_corpus

REPO_ROOT = Path(__file__).resolve().parent.parent
REFTOOL = REPO_ROOT / "tools" / "refjs" / "reftool.js"
DATASET_ROOT_ENV = "JSSTYLO_DATASET_ROOT"

FIVE_GPT_MODELS = ["gpt-4.1", "gpt-4o", "gpt-4o-mini", "gpt-5-mini", "gpt-oss-120b"]


def node_available() -> bool:
    return shutil.which("node") is not None


def acorn_available() -> bool:
    if not node_available() or not REFTOOL.exists():
        return False
    refjs = REFTOOL.parent
    if not (refjs / "node_modules" / "acorn").exists():
        # One-time setup; requires the npm mirror.
        install = subprocess.run(
            ["npm", "install", "acorn@8"], cwd=refjs, capture_output=True, text=True
        )
        if install.returncode != 0:
            return False
    return True


def run_reftool(paths: list[Path]) -> list[dict]:
    """Reference token kinds / preorder node kinds for each file."""
    manifest = paths[0].parent / "_reftool_manifest.txt"
    manifest.write_text("\n".join(str(p) for p in paths))
    proc = subprocess.run(
        ["node", str(REFTOOL), "--manifest", str(manifest)],
        capture_output=True,
        text=True,
        check=True,
    )
    return [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]


requires_node = pytest.mark.skipif(not node_available(), reason="node runtime not available")


@pytest.fixture(scope="session")
def acorn_ready() -> bool:
    if not acorn_available():
        pytest.skip("acorn reference toolchain not available (node/npm required)")
    return True


@pytest.fixture(scope="session")
def demo_corpus():
    """1,000 style-controlled samples: 5 models x 20 tasks x 10 repeats."""
    return make_corpus(models=FIVE_GPT_MODELS, n_tasks=20, repeats=10, seed=42)


@pytest.fixture(scope="session")
def demo_sources(demo_corpus) -> list[str]:
    return [s.source for s in demo_corpus]


@pytest.fixture(scope="session")
def small_corpus():
    """300 samples across 3 models; cheap enough for per-test pipelines."""
    return make_corpus(
        models=["gemini-2.5-flash-lite", "gpt-4o", "gpt-5-mini"], n_tasks=10, repeats=10, seed=42
    )


@pytest.fixture(scope="session")
def differential_files(tmp_path_factory, demo_corpus) -> list[Path]:
    """The demo corpus written out as 1,000 .mjs files."""
    root = tmp_path_factory.mktemp("differential")
    paths = []
    for i, sample in enumerate(demo_corpus):
        path = root / f"sample_{i:04d}.mjs"
        path.write_text(sample.source)
        paths.append(path)
    assert len(paths) == 1000
    return paths


@pytest.fixture(scope="session")
def differential_reference(acorn_ready, differential_files) -> list[dict]:
    """acorn's token kinds and preorder node kinds for every file."""
    return run_reftool(differential_files)


@pytest.fixture(scope="session")
def dataset_root() -> Path:
    root = os.environ.get(DATASET_ROOT_ENV)
    if not root:
        pytest.skip(f"full dataset not available (set ${DATASET_ROOT_ENV} to enable)")
    path = Path(root)
    if not path.exists():
        pytest.skip(f"${DATASET_ROOT_ENV} points to a missing path: {path}")
    return path
