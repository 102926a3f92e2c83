"""Debugging-driven conversational repair loop.

Hierarchy: each session opens with a direct repair attempt from the buggy
function plus outcome-level symptoms; if that fails, the session switches to
debugging rounds that feed the model an instrumented variant, the minimized
test, the captured runtime trace, and the accumulated patch/error history.
A session that exhausts its rounds is discarded wholesale (history included)
and a fresh session re-instruments for a new trace. The generation budget is
exact: sessions consume one call for the direct attempt plus one per
debugging round; augmentation afterwards adds at most its own quota.
"""

from __future__ import annotations

import difflib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import harness, prompts
from .errors import (
    EmptyTrace, GatewayAuthError, GatewayUnavailable, InstrumentationUnavailable,
    ScriptExhausted,
)
from .gateway import Gateway, sha256_text
from .instrument import (
    BuggyFunction, InstrumentedFunction, InstrumenterConfig, instrument,
)
from .java import JavaAdapter
from .purify import PurifiedTest

MALFORMED_NOTE = "reply contained no fenced code block with a method"


@dataclass
class RepairConfig:
    n_session: int = 6
    k_round: int = 4
    n_augment: int = 8
    m_inst: int = 10
    temperature: float = 1.0
    full_suite: bool = False
    purify_enabled: bool = True
    debug_enabled: bool = True
    augment_enabled: bool = True
    context_budget: int = 24000

    @property
    def max_generation_calls(self) -> int:
        return self.n_session * self.k_round + self.n_augment

    def instrumenter(self) -> InstrumenterConfig:
        return InstrumenterConfig(m_inst=self.m_inst)


@dataclass
class ConversationTurn:
    patch: str | None
    symptoms: str
    round: int
    session: int


@dataclass
class RepairJob:
    bug: BuggyFunction
    project: harness.SubjectProject
    trigger_tests: list[str]
    purified: PurifiedTest | None = None
    purified_file: str | None = None
    baseline_symptoms: str = ""

    @property
    def purified_test_id(self) -> str | None:
        return self.purified.test_id if self.purified else None


@dataclass
class RepairResult:
    status: str  # plausible_found | budget_exhausted | error
    plausible_patches: list[str] = field(default_factory=list)
    winning_session: int | None = None
    winning_round: int | None = None
    generation_calls: int = 0
    augment_calls: int = 0
    timings: dict = field(default_factory=dict)
    log: list[dict] = field(default_factory=list)
    error: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "plausible_patch_count": len(self.plausible_patches),
            "winning_session": self.winning_session,
            "winning_round": self.winning_round,
            "generation_calls": self.generation_calls,
            "augment_calls": self.augment_calls,
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
            "error": self.error,
        }


class _Repair:
    def __init__(self, job: RepairJob, config: RepairConfig, gateway: Gateway,
                 adapter: JavaAdapter | None = None):
        self.job = job
        self.config = config
        self.gateway = gateway
        self.adapter = adapter or JavaAdapter()
        self.result = RepairResult("budget_exhausted")
        self.rule_cache: tuple[InstrumentedFunction, str] | None = None
        self.compile_probe = harness.CandidateCompiler(job.project, job.bug)

    # -- logging ---------------------------------------------------------

    def _log(self, session: int, round_: int, phase: str, prompt: str,
             reply: str, verdict: str, duration: float) -> None:
        self.result.log.append({
            "session": session, "round": round_, "phase": phase,
            "prompt_sha256": sha256_text(prompt),
            "reply_sha256": sha256_text(reply),
            "verdict": verdict, "duration": round(duration, 3),
        })

    # -- generation + verification --------------------------------------

    def _generate(self, prompt: str, purpose: str) -> str:
        return self.gateway.chat([{"role": "user", "content": prompt}],
                                 purpose=purpose)

    def _verify(self, patch: str) -> harness.VerifyResult:
        job = self.job
        return harness.verify_patch(
            job.project, patch, job.bug, job.trigger_tests,
            purified_test_id=job.purified_test_id,
            purified_source=job.purified.assembled_class if job.purified else None,
            purified_file=job.purified_file,
            full_suite=self.config.full_suite)

    def _attempt(self, prompt: str, purpose: str, session: int, round_: int
                 ) -> tuple[str | None, str, bool]:
        """One budgeted generation: (patch, symptoms, plausible)."""
        started = time.monotonic()
        reply = self._generate(prompt, purpose)
        self.result.generation_calls += 1
        patch = prompts.extract_patch(reply)
        if patch is None:
            self._log(session, round_, purpose, prompt, reply, "malformed",
                      time.monotonic() - started)
            return None, MALFORMED_NOTE, False
        verdict = self._verify(patch)
        label = "plausible" if verdict.plausible else f"fail@{verdict.stage}"
        self._log(session, round_, purpose, prompt, reply, label,
                  time.monotonic() - started)
        symptoms = f"[{verdict.stage}] {verdict.outcome.symptoms()}".strip()
        return patch, symptoms, verdict.plausible

    # -- session instrumentation ------------------------------------------

    def _session_debug_context(self, session: int
                               ) -> tuple[InstrumentedFunction | None, str]:
        if not self.config.debug_enabled:
            return None, ""
        job = self.job
        started = time.monotonic()
        try:
            inst = instrument(job.bug, job.purified, self.gateway,
                              compile_probe=self.compile_probe,
                              config=self.config.instrumenter(),
                              adapter=self.adapter)
        except InstrumentationUnavailable:
            self.result.timings["instrument"] = \
                self.result.timings.get("instrument", 0.0) \
                + (time.monotonic() - started)
            return None, ""
        if inst.mode == "rule" and self.rule_cache is not None:
            self.result.timings["instrument"] = \
                self.result.timings.get("instrument", 0.0) \
                + (time.monotonic() - started)
            return self.rule_cache
        trace_text = self._capture(inst, session)
        if inst.mode == "rule":
            self.rule_cache = (inst, trace_text)
        self.result.timings["instrument"] = \
            self.result.timings.get("instrument", 0.0) \
            + (time.monotonic() - started)
        return inst, trace_text

    def _capture(self, inst: InstrumentedFunction, session: int) -> str:
        job = self.job
        harness.restore_workspace(job.project)
        if job.purified and job.purified_file:
            harness.write_workspace_file(job.project, job.purified_file,
                                         job.purified.assembled_class)
        outcome = harness.apply_and_compile(
            job.project, [harness.function_edit(job.bug, inst.source)])
        if outcome.kind != "compile_ok":
            return ""
        test_id = job.purified_test_id or (job.trigger_tests[0]
                                           if job.trigger_tests else None)
        if test_id is None:
            return ""
        try:
            _outcome, trace = harness.capture_trace(job.project, inst,
                                                    test_id, session)
        except EmptyTrace:
            return ""
        return trace.serialize()

    # -- main loop -----------------------------------------------------------

    def run(self) -> RepairResult:
        config = self.config
        job = self.job
        started = time.monotonic()
        plausible: str | None = None
        try:
            for session in range(1, config.n_session + 1):
                prompt = prompts.direct_repair_prompt(job.bug,
                                                      job.baseline_symptoms)
                patch0, error0, ok = self._attempt(prompt, "direct_repair",
                                                   session, 0)
                if ok:
                    plausible = patch0
                    self.result.winning_session = session
                    self.result.winning_round = 0
                    break
                if config.k_round <= 1:
                    continue
                inst, trace_text = self._session_debug_context(session)
                history: list[ConversationTurn] = []
                found = False
                for round_ in range(1, config.k_round):
                    prompt = prompts.debug_repair_prompt(
                        job.bug, inst, job.purified, trace_text,
                        patch0, error0,
                        [(t.patch or "(unparseable reply)", t.symptoms)
                         for t in history],
                        context_budget=config.context_budget)
                    patch, symptoms, ok = self._attempt(prompt, "debug_repair",
                                                        session, round_)
                    if ok:
                        plausible = patch
                        self.result.winning_session = session
                        self.result.winning_round = round_
                        found = True
                        break
                    history.append(ConversationTurn(patch, symptoms,
                                                    round_, session))
                if found:
                    break
                # session exhausted: history is discarded with the session
        except (GatewayUnavailable, GatewayAuthError, ScriptExhausted) as exc:
            self.result.status = "error"
            self.result.error = f"{type(exc).__name__}: {exc}"
            self.result.timings["repair"] = time.monotonic() - started
            return self.result
        self.result.timings["repair"] = time.monotonic() - started

        if plausible is None:
            self.result.status = "budget_exhausted"
            return self.result
        self.result.status = "plausible_found"
        patches = [plausible]
        if config.augment_enabled and config.n_augment > 0:
            patches += self._augment(plausible)
        self.result.plausible_patches = patches
        return self.result

    def _augment(self, plausible: str) -> list[str]:
        started = time.monotonic()
        variants: list[str] = []
        for i in range(self.config.n_augment):
            prompt = prompts.augment_prompt(self.job.bug, plausible,
                                            self.job.purified)
            call_start = time.monotonic()
            try:
                reply = self._generate(prompt, "augment")
            except (GatewayUnavailable, ScriptExhausted):
                break
            self.result.augment_calls += 1
            patch = prompts.extract_patch(reply)
            if patch is None:
                self._log(0, i, "augment", prompt, reply, "malformed",
                          time.monotonic() - call_start)
                continue
            verdict = self._verify(patch)
            label = "plausible" if verdict.plausible else f"fail@{verdict.stage}"
            self._log(0, i, "augment", prompt, reply, label,
                      time.monotonic() - call_start)
            if verdict.plausible and patch != plausible \
                    and patch not in variants:
                variants.append(patch)
        self.result.timings["augment"] = time.monotonic() - started
        return variants


def run_repair(job: RepairJob, config: RepairConfig, gateway: Gateway,
               adapter: JavaAdapter | None = None) -> RepairResult:
    return _Repair(job, config, gateway, adapter).run()


# ---- report emission -----------------------------------------------------------


def patch_diff(job: RepairJob, patch: str) -> str:
    """Unified diff of the patched file against the original."""
    original = (job.project.root_path / job.bug.file_path).read_text()
    lo, hi = job.bug.line_range
    lines = original.splitlines(keepends=True)
    replacement = patch if patch.endswith("\n") else patch + "\n"
    patched = "".join(lines[:lo - 1]) + replacement + "".join(lines[hi:])
    return "".join(difflib.unified_diff(
        original.splitlines(keepends=True), patched.splitlines(keepends=True),
        fromfile=f"a/{job.bug.file_path}", tofile=f"b/{job.bug.file_path}"))


def write_reports(out_dir: Path, job: RepairJob, result: RepairResult) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "calls.jsonl", "w") as fh:
        for record in result.log:
            fh.write(json.dumps(record) + "\n")
    with open(out_dir / "result.json", "w") as fh:
        json.dump(result.to_json(), fh, indent=2)
        fh.write("\n")
    for i, patch in enumerate(result.plausible_patches):
        (out_dir / f"patch_{i}.java").write_text(
            patch if patch.endswith("\n") else patch + "\n")
        (out_dir / f"patch_{i}.diff").write_text(patch_diff(job, patch))
