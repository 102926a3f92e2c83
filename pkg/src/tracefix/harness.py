"""Subject-project execution: workspaces, builds, test runs, trace capture.

Every execution happens inside an isolated workspace copy; the original
project tree is never touched. Build/test/suite commands are shell templates
so any toolchain plugs in; sandboxed fixture projects use the embedded
runner (`{python} -m tracefix.jrun ...`) through exactly the same seam a JDK
would use.
"""

from __future__ import annotations

import shlex
import shutil
import subprocess
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyTrace, TracefixError
from .instrument import BuggyFunction, InstrumentedFunction
from .sigparse import FailureSignature, parse_failure_signature
from .trace import RuntimeTrace, parse_trace

DEFAULT_BUILD_CMD = "{python} -m tracefix.jrun check ."
DEFAULT_TEST_CMD = "{python} -m tracefix.jrun test . {test_id}"
DEFAULT_SUITE_CMD = "{python} -m tracefix.jrun suite ."


@dataclass
class SubjectProject:
    root_path: Path
    build_cmd: str = DEFAULT_BUILD_CMD
    test_cmd: str = DEFAULT_TEST_CMD
    suite_cmd: str | None = DEFAULT_SUITE_CMD
    compile_timeout: float = 120.0
    test_timeout: float = 120.0
    env_passthrough: tuple[str, ...] = ()
    workspace: Path | None = None

    def require_workspace(self) -> Path:
        if self.workspace is None:
            raise TracefixError("workspace not initialized")
        return self.workspace


@dataclass
class ExecutionOutcome:
    kind: str  # compile_ok|compile_error|test_pass|test_fail|timeout|crash
    stdout: str = ""
    stderr: str = ""
    failure_signature: FailureSignature | None = None
    duration: float = 0.0
    command: str = ""

    def symptoms(self) -> str:
        """Outcome-level failure text suitable for a prompt or history."""
        if self.kind == "test_fail" and self.failure_signature is not None:
            frames = "\n".join(
                f"\tat {f.class_name}.{f.method}({f.file}:{f.line})"
                for f in self.failure_signature.frames)
            return self.failure_signature.brief() + ("\n" + frames if frames else "")
        if self.kind == "compile_error":
            text = (self.stderr or self.stdout).strip()
            return "compilation failed:\n" + text[-2000:]
        if self.kind == "timeout":
            return "execution timed out"
        if self.kind == "crash":
            return "runner crashed:\n" + (self.stderr or self.stdout)[-2000:]
        return ""


@dataclass
class VerifyResult:
    plausible: bool
    stage: str  # compile|purified|trigger|suite|done
    outcome: ExecutionOutcome


# ---- workspace management ----------------------------------------------------


def init_workspace(project: SubjectProject, workspace_dir: Path) -> Path:
    workspace_dir = Path(workspace_dir)
    if workspace_dir.exists():
        shutil.rmtree(workspace_dir)
    shutil.copytree(project.root_path, workspace_dir,
                    ignore=shutil.ignore_patterns(".git", "__pycache__"))
    project.workspace = workspace_dir
    return workspace_dir


def restore_workspace(project: SubjectProject) -> None:
    """Reset the workspace to a pristine copy of the original project."""
    workspace = project.require_workspace()
    shutil.rmtree(workspace)
    shutil.copytree(project.root_path, workspace,
                    ignore=shutil.ignore_patterns(".git", "__pycache__"))


def write_workspace_file(project: SubjectProject, rel_path: str,
                         text: str) -> Path:
    path = project.require_workspace() / rel_path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def read_workspace_file(project: SubjectProject, rel_path: str) -> str:
    return (project.require_workspace() / rel_path).read_text()


def apply_edits(project: SubjectProject, edits: list[dict]) -> None:
    """Textual splices: {file, line_range|span, replacement}."""
    for edit in edits:
        path = project.require_workspace() / edit["file"]
        text = path.read_text()
        replacement = edit["replacement"]
        if "span" in edit:
            start, end = edit["span"]
            text = text[:start] + replacement + text[end:]
        else:
            lo, hi = edit["line_range"]
            lines = text.splitlines(keepends=True)
            if not replacement.endswith("\n"):
                replacement += "\n"
            lines[lo - 1:hi] = [replacement]
            text = "".join(lines)
        path.write_text(text)


def function_edit(bug: BuggyFunction, replacement: str) -> dict:
    return {"file": bug.file_path, "line_range": bug.line_range,
            "replacement": replacement}


# ---- command execution ---------------------------------------------------------


def _run_command(template: str, project: SubjectProject, timeout: float,
                 **params) -> ExecutionOutcome:
    command = template.format(python=sys.executable,
                              root=str(project.require_workspace()),
                              **params)
    argv = shlex.split(command)
    started = time.monotonic()
    try:
        proc = subprocess.run(
            argv, cwd=project.require_workspace(), capture_output=True,
            text=True, timeout=timeout)
    except subprocess.TimeoutExpired as exc:
        stdout = exc.stdout or ""
        stderr = exc.stderr or ""
        if isinstance(stdout, bytes):
            stdout = stdout.decode(errors="replace")
        if isinstance(stderr, bytes):
            stderr = stderr.decode(errors="replace")
        return ExecutionOutcome("timeout", stdout, stderr, None,
                                time.monotonic() - started, command), None
    except FileNotFoundError as exc:
        raise EnvironmentError(f"runner not found: {argv[0]}") from exc
    duration = time.monotonic() - started
    return ExecutionOutcome("raw", proc.stdout, proc.stderr, None, duration,
                            command), proc.returncode


def compile_project(project: SubjectProject) -> ExecutionOutcome:
    outcome, returncode = _run_command(project.build_cmd, project,
                                       project.compile_timeout)
    if outcome.kind == "timeout":
        return outcome
    outcome.kind = "compile_ok" if returncode == 0 else "compile_error"
    return outcome


def run_test(project: SubjectProject, test_id: str) -> ExecutionOutcome:
    outcome, returncode = _run_command(project.test_cmd, project,
                                       project.test_timeout, test_id=test_id)
    if outcome.kind == "timeout":
        return outcome
    return _classify_test(outcome, returncode)


def run_suite(project: SubjectProject) -> ExecutionOutcome:
    if not project.suite_cmd:
        return ExecutionOutcome("test_pass", "", "", None, 0.0, "(no suite)")
    outcome, returncode = _run_command(project.suite_cmd, project,
                                       project.test_timeout)
    if outcome.kind == "timeout":
        return outcome
    return _classify_test(outcome, returncode)


def _classify_test(outcome: ExecutionOutcome, returncode: int
                   ) -> ExecutionOutcome:
    if returncode == 0:
        outcome.kind = "test_pass"
        return outcome
    signature = parse_failure_signature(outcome.stdout + "\n" + outcome.stderr)
    if signature is not None:
        outcome.kind = "test_fail"
        outcome.failure_signature = signature
    else:
        outcome.kind = "crash"
    return outcome


def apply_and_compile(project: SubjectProject,
                      edits: list[dict]) -> ExecutionOutcome:
    apply_edits(project, edits)
    return compile_project(project)


# ---- pipeline-facing operations -------------------------------------------------


class CandidateCompiler:
    """Compile probe used by the consistency check's second stage.

    Splices the candidate over the buggy function inside the workspace,
    builds, and restores the workspace either way.
    """

    def __init__(self, project: SubjectProject, bug: BuggyFunction):
        self.project = project
        self.bug = bug

    def __call__(self, candidate: str) -> tuple[bool, str]:
        restore_workspace(self.project)
        outcome = apply_and_compile(self.project,
                                    [function_edit(self.bug, candidate)])
        ok = outcome.kind == "compile_ok"
        diagnostics = "" if ok else (outcome.stderr or outcome.stdout)[-2000:]
        restore_workspace(self.project)
        return ok, diagnostics


def capture_trace(project: SubjectProject, inst: InstrumentedFunction,
                  test_id: str, session: int = 0
                  ) -> tuple[ExecutionOutcome, RuntimeTrace]:
    """Run the (purified) test against the already-spliced instrumented code.

    Raises EmptyTrace when no START marker shows up, meaning the
    instrumented function never executed under this test.
    """
    outcome = run_test(project, test_id)
    text = outcome.stdout + ("\n" + outcome.stderr if outcome.stderr else "")
    trace, _program = parse_trace(text)
    workspace = project.require_workspace()
    (workspace / f"trace_{session}.log").write_text(
        trace.render() + ("\n" if trace.records or trace.start_count else ""))
    import json
    (workspace / f"trace_{session}.json").write_text(
        json.dumps(trace.to_json(), indent=2) + "\n")
    if trace.start_count == 0:
        raise EmptyTrace("instrumented region never executed "
                         f"(test {test_id}, outcome {outcome.kind})")
    return outcome, trace


def verify_patch(project: SubjectProject, patch: str, bug: BuggyFunction,
                 trigger_tests: list[str],
                 purified_test_id: str | None = None,
                 purified_source: str | None = None,
                 purified_file: str | None = None,
                 full_suite: bool = False) -> VerifyResult:
    """Cost-ordered verification gauntlet; first failure short-circuits."""
    restore_workspace(project)
    if purified_source and purified_file:
        write_workspace_file(project, purified_file, purified_source)
    outcome = apply_and_compile(project, [function_edit(bug, patch)])
    if outcome.kind != "compile_ok":
        return VerifyResult(False, "compile", outcome)
    if purified_test_id:
        outcome = run_test(project, purified_test_id)
        if outcome.kind != "test_pass":
            return VerifyResult(False, "purified", outcome)
    for test_id in trigger_tests:
        outcome = run_test(project, test_id)
        if outcome.kind != "test_pass":
            return VerifyResult(False, "trigger", outcome)
    if full_suite:
        if purified_source and purified_file:
            # the suite must judge the original tests, not the scaffold copy
            (project.require_workspace() / purified_file).unlink(missing_ok=True)
        outcome = run_suite(project)
        if outcome.kind != "test_pass":
            return VerifyResult(False, "suite", outcome)
    return VerifyResult(True, "done", outcome)
