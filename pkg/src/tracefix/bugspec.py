"""Bug specifications, tool configuration, and run manifests.

A bug spec is one human-editable YAML/JSON file naming the subject project,
its build/test commands, the failing test, and the buggy function location
(file, name, line range): the perfect fault-localization inputs. A schema
validator runs before anything executes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import yaml

from .errors import BugSpecError
from .harness import (
    DEFAULT_BUILD_CMD, DEFAULT_SUITE_CMD, DEFAULT_TEST_CMD, SubjectProject,
)
from .instrument import BuggyFunction, load_buggy_function
from .java import JavaAdapter

BUGSPEC_SCHEMA = {
    "type": "object",
    "required": ["project_root", "failing_test", "buggy_file",
                 "buggy_function", "line_range"],
    "properties": {
        "project_root": {"type": "string"},
        "build_cmd": {"type": "string"},
        "test_cmd": {"type": "string"},
        "suite_cmd": {"type": ["string", "null"]},
        "failing_test": {"type": "string", "pattern": "^[\\w$.]+#[\\w$]+$"},
        "test_file": {"type": "string"},
        "buggy_file": {"type": "string"},
        "buggy_function": {"type": "string"},
        "line_range": {
            "type": "array", "items": {"type": "integer", "minimum": 1},
            "minItems": 2, "maxItems": 2,
        },
        "language": {"type": "string", "enum": ["java"]},
        "label": {"type": "string"},
        "compile_timeout": {"type": "number"},
        "test_timeout": {"type": "number"},
    },
    "additionalProperties": False,
}


@dataclass
class BugSpec:
    project_root: Path
    failing_test: str
    buggy_file: str
    buggy_function: str
    line_range: tuple[int, int]
    build_cmd: str = DEFAULT_BUILD_CMD
    test_cmd: str = DEFAULT_TEST_CMD
    suite_cmd: str | None = DEFAULT_SUITE_CMD
    test_file: str | None = None
    language: str = "java"
    label: str | None = None
    compile_timeout: float = 120.0
    test_timeout: float = 120.0

    @property
    def test_class(self) -> str:
        return self.failing_test.split("#", 1)[0]

    @property
    def test_method(self) -> str:
        return self.failing_test.split("#", 1)[1]

    def display_name(self) -> str:
        return self.label or f"{self.test_class}-{self.buggy_function}"

    def project(self) -> SubjectProject:
        return SubjectProject(
            root_path=self.project_root, build_cmd=self.build_cmd,
            test_cmd=self.test_cmd, suite_cmd=self.suite_cmd,
            compile_timeout=self.compile_timeout,
            test_timeout=self.test_timeout)

    def load_bug(self, adapter: JavaAdapter | None = None) -> BuggyFunction:
        text = (self.project_root / self.buggy_file).read_text()
        lines = text.splitlines(keepends=True)
        lo, hi = self.line_range
        source = "".join(lines[lo - 1:hi])
        bug = load_buggy_function(source, self.buggy_file, (lo, hi),
                                  enclosing_class=Path(self.buggy_file).stem,
                                  adapter=adapter)
        if bug.method_name != self.buggy_function:
            raise BugSpecError(
                f"line_range {self.line_range} holds method "
                f"{bug.method_name!r}, expected {self.buggy_function!r}")
        return bug

    def find_test_file(self) -> Path:
        if self.test_file:
            return self.project_root / self.test_file
        direct = self.project_root / f"{self.test_class}.java"
        if direct.exists():
            return direct
        for path in sorted(self.project_root.rglob("*.java")):
            if f"class {self.test_class}" in path.read_text():
                return path
        raise BugSpecError(f"cannot locate source of test class "
                           f"{self.test_class}")


def _load_data(path: Path) -> dict:
    text = path.read_text()
    if path.suffix in (".yaml", ".yml"):
        return yaml.safe_load(text)
    return json.loads(text)


def load_bugspec(path: str | Path) -> BugSpec:
    path = Path(path)
    try:
        data = _load_data(path)
    except (OSError, ValueError, yaml.YAMLError) as exc:
        raise BugSpecError(f"{path}: cannot load: {exc}") from exc
    try:
        jsonschema.validate(data, BUGSPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise BugSpecError(f"{path}: schema violation: {exc.message}") from exc
    root = Path(data["project_root"])
    if not root.is_absolute():
        root = (path.parent / root).resolve()
    spec = BugSpec(
        project_root=root,
        failing_test=data["failing_test"],
        buggy_file=data["buggy_file"],
        buggy_function=data["buggy_function"],
        line_range=tuple(data["line_range"]),
        build_cmd=data.get("build_cmd", DEFAULT_BUILD_CMD),
        test_cmd=data.get("test_cmd", DEFAULT_TEST_CMD),
        suite_cmd=data.get("suite_cmd", DEFAULT_SUITE_CMD),
        test_file=data.get("test_file"),
        language=data.get("language", "java"),
        label=data.get("label"),
        compile_timeout=data.get("compile_timeout", 120.0),
        test_timeout=data.get("test_timeout", 120.0),
    )
    _validate_paths(spec)
    return spec


def _validate_paths(spec: BugSpec) -> None:
    if not spec.project_root.is_dir():
        raise BugSpecError(f"project root {spec.project_root} does not exist")
    buggy = spec.project_root / spec.buggy_file
    if not buggy.is_file():
        raise BugSpecError(f"buggy file {buggy} does not exist")
    line_count = len(buggy.read_text().splitlines())
    lo, hi = spec.line_range
    if not (1 <= lo <= hi <= line_count):
        raise BugSpecError(
            f"line_range {spec.line_range} outside file ({line_count} lines)")


@dataclass
class RunManifest:
    config_snapshot: dict
    tool_version: str
    per_bug: list[dict] = field(default_factory=list)
    wall_clock: float = 0.0

    def add(self, name: str, status: str, detail: dict) -> None:
        self.per_bug.append({"bug": name, "status": status, **detail})

    def counters(self) -> dict:
        counts = {"plausible_count": 0, "budget_exhausted_count": 0,
                  "error_count": 0}
        for entry in self.per_bug:
            if entry["status"] == "plausible_found":
                counts["plausible_count"] += 1
            elif entry["status"] == "budget_exhausted":
                counts["budget_exhausted_count"] += 1
            else:
                counts["error_count"] += 1
        return counts

    def to_json(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "config": self.config_snapshot,
            "bugs": sorted(self.per_bug, key=lambda e: e["bug"]),
            "counters": self.counters(),
            "wall_clock_seconds": round(self.wall_clock, 3),
        }
