"""Shared fixtures: project builders and jrun helpers."""

from __future__ import annotations

from pathlib import Path

import pytest

from tracefix.java import JavaAdapter
from tracefix.jrun import Interp, Registry, run_main, run_one


@pytest.fixture
def adapter() -> JavaAdapter:
    return JavaAdapter()


def make_project(base: Path, files: dict[str, str]) -> Path:
    base.mkdir(parents=True, exist_ok=True)
    for rel, text in files.items():
        path = base / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return base


def run_java_test(project_dir: Path, test_id: str):
    """In-process test run; returns (passed, thrown, stdout_text)."""
    registry = Registry.from_dir(project_dir)
    assert not registry.load_errors, registry.load_errors
    class_name, method = test_id.split("#", 1)
    interp = Interp(registry)
    outcome = run_one(interp, registry.classes[class_name], method)
    return outcome.passed, outcome.thrown, "".join(interp.stdout_lines)


def run_java_main(project_dir: Path, class_name: str = "Subject"):
    registry = Registry.from_dir(project_dir)
    assert not registry.load_errors, registry.load_errors
    return run_main(registry, class_name, [])


@pytest.fixture
def project_factory(tmp_path):
    counter = [0]

    def build(files: dict[str, str]) -> Path:
        counter[0] += 1
        return make_project(tmp_path / f"proj{counter[0]}", files)

    return build
