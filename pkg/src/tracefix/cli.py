"""Operator-facing command line: purify | instrument | trace | repair | eval.

Exit codes form a closed set:
  0  success (Confirmed / instrumented / trace captured / plausible patch)
  1  error (invalid spec, test does not fail, runtime error)
  2  purification Divergent (fallback to the original test recorded)
  3  instrumentation unavailable
  4  empty trace (instrumented region never executed)
  5  repair budget exhausted without a plausible patch
"""

from __future__ import annotations

import concurrent.futures
import json
import shutil
import sys
import time
from pathlib import Path

import click

from . import __version__, harness, orchestrate, purify as purify_mod
from .bugspec import BugSpec, RunManifest, load_bugspec
from .errors import (
    BugSpecError, EmptyTrace, InstrumentationUnavailable, ParseFailure,
    TracefixError,
)
from .gateway import Gateway, GatewayConfig
from .instrument import (
    InstrumenterConfig, InstrumentedFunction, consistency_check, instrument,
    llm_instrument, predict_breakpoints, rule_instrument,
)
from .java import JavaAdapter, parse_source
from .orchestrate import RepairConfig, RepairJob, run_repair, write_reports

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DIVERGENT = 2
EXIT_NO_INSTRUMENTATION = 3
EXIT_EMPTY_TRACE = 4
EXIT_BUDGET_EXHAUSTED = 5


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Debugging-driven program repair toolchain."""


def _gateway_options(fn):
    fn = click.option("--gateway", "gateway_backend",
                      type=click.Choice(["http", "scripted"]),
                      default="scripted", show_default=True)(fn)
    fn = click.option("--transcript", type=click.Path(), default=None,
                      help="Scripted-backend transcript (JSON).")(fn)
    fn = click.option("--endpoint", default="", help="HTTP chat endpoint.")(fn)
    fn = click.option("--model", default="", help="Model name.")(fn)
    fn = click.option("--api-key-env", default="TRACEFIX_API_KEY",
                      show_default=True)(fn)
    fn = click.option("--temperature", type=float, default=1.0,
                      show_default=True)(fn)
    fn = click.option("--seed", type=int, default=None,
                      help="Scripted-backend variant shuffling seed.")(fn)
    return fn


def _budget_options(fn):
    fn = click.option("--n-session", type=int, default=6, show_default=True)(fn)
    fn = click.option("--k-round", type=int, default=4, show_default=True)(fn)
    fn = click.option("--n-augment", type=int, default=8, show_default=True)(fn)
    fn = click.option("--m-inst", type=int, default=10, show_default=True)(fn)
    fn = click.option("--full-suite", is_flag=True, default=False)(fn)
    fn = click.option("--no-purify", is_flag=True, default=False)(fn)
    fn = click.option("--no-debug", is_flag=True, default=False)(fn)
    fn = click.option("--no-augment", is_flag=True, default=False)(fn)
    return fn


def _make_gateway(gateway_backend, transcript, endpoint, model, api_key_env,
                  temperature, seed) -> Gateway | None:
    if gateway_backend == "scripted" and transcript is None:
        return None
    config = GatewayConfig(
        backend=gateway_backend, endpoint=endpoint, model=model,
        api_key_env=api_key_env, temperature=temperature,
        transcript_path=transcript, seed=seed)
    return Gateway(config)


def _load_spec(spec_path: str) -> BugSpec:
    try:
        return load_bugspec(spec_path)
    except BugSpecError as exc:
        raise click.ClickException(str(exc))


def _workspace(workspace: str | None, spec: BugSpec) -> Path:
    base = Path(workspace) if workspace else \
        Path.cwd() / "tracefix-work" / spec.display_name()
    base.mkdir(parents=True, exist_ok=True)
    return base


def _baseline(spec: BugSpec, base: Path):
    """Init workspace, compile, and reproduce the failure. Exits on failure."""
    project = spec.project()
    harness.init_workspace(project, base / "project")
    outcome = harness.compile_project(project)
    if outcome.kind != "compile_ok":
        click.echo("subject project does not compile:\n"
                   + (outcome.stderr or outcome.stdout), err=True)
        sys.exit(EXIT_ERROR)
    outcome = harness.run_test(project, spec.failing_test)
    if outcome.kind == "test_pass":
        click.echo(f"test {spec.failing_test} does not fail", err=True)
        sys.exit(EXIT_ERROR)
    if outcome.kind != "test_fail" or outcome.failure_signature is None:
        click.echo(f"cannot reproduce failure (outcome={outcome.kind}):\n"
                   + (outcome.stderr or outcome.stdout), err=True)
        sys.exit(EXIT_ERROR)
    return project, outcome


def _purify(spec: BugSpec, project, outcome, base: Path):
    """Returns (ctx, purified, verdict)."""
    adapter = JavaAdapter()
    test_source = spec.find_test_file().read_text()
    tree = parse_source(test_source)
    ctx, pt = purify_mod.purify(tree, spec.test_class, spec.test_method,
                                outcome.failure_signature, adapter)
    verdict = purify_mod.validate_purified(pt, ctx, project, harness)
    purified_path = base / f"{spec.test_class}_purified.java"
    purified_path.write_text(pt.assembled_class)
    purify_mod.write_slice_report(base / "slice_report.json", pt,
                                  verdict.status)
    return ctx, pt, verdict


@main.command(name="purify")
@click.argument("spec_path", type=click.Path(exists=True))
@click.option("--workspace", type=click.Path(), default=None)
def cmd_purify(spec_path, workspace) -> None:
    """Slice the failing test to its failure-triggering core."""
    spec = _load_spec(spec_path)
    base = _workspace(workspace, spec)
    project, outcome = _baseline(spec, base)
    try:
        _ctx, pt, verdict = _purify(spec, project, outcome, base)
    except (ParseFailure, TracefixError) as exc:
        click.echo(f"purification failed: {exc}", err=True)
        sys.exit(EXIT_ERROR)
    click.echo(json.dumps(pt.slice_report(verdict.status), indent=2))
    if verdict.confirmed:
        sys.exit(EXIT_OK)
    click.echo(f"divergent ({verdict.reason}); original test will be used",
               err=True)
    sys.exit(EXIT_DIVERGENT)


@main.command(name="instrument")
@click.argument("spec_path", type=click.Path(exists=True))
@click.option("--mode", type=click.Choice(["llm", "rule", "auto"]),
              default="auto", show_default=True)
@click.option("--workspace", type=click.Path(), default=None)
@click.option("--no-purify", is_flag=True, default=False)
@click.option("--m-inst", type=int, default=10, show_default=True)
@_gateway_options
def cmd_instrument(spec_path, mode, workspace, no_purify, m_inst,
                   **gateway_kwargs) -> None:
    """Produce the print-instrumented variant of the buggy function."""
    spec = _load_spec(spec_path)
    base = _workspace(workspace, spec)
    project, outcome = _baseline(spec, base)
    bug = spec.load_bug()
    pt = None
    if not no_purify:
        try:
            _ctx, pt_candidate, verdict = _purify(spec, project, outcome, base)
            if verdict.confirmed:
                pt = pt_candidate
        except (ParseFailure, TracefixError):
            pt = None
    gateway = _make_gateway(**gateway_kwargs)
    config = InstrumenterConfig(m_inst=m_inst)
    compile_probe = harness.CandidateCompiler(project, bug)
    inst = None
    try:
        if mode == "rule":
            inst = rule_instrument(bug, config=config)
            ok, diagnostics = compile_probe(inst.source)
            inst.check_report.compilation = ok
            if not ok:
                click.echo(f"rule output does not compile:\n{diagnostics}",
                           err=True)
                sys.exit(EXIT_NO_INSTRUMENTATION)
        elif mode == "llm":
            if gateway is None:
                click.echo("llm mode needs a gateway "
                           "(--transcript or --gateway http)", err=True)
                sys.exit(EXIT_ERROR)
            for attempt in range(1, config.m_inst + 1):
                vcrit = predict_breakpoints(pt, bug, gateway, config=config)
                try:
                    candidate = llm_instrument(bug, vcrit, gateway)
                except TracefixError:
                    continue
                verdict_c = consistency_check(candidate, bug, compile_probe,
                                              config=config)
                if verdict_c.accepted:
                    inst = InstrumentedFunction(candidate, "llm", attempt,
                                                verdict_c, original=bug.source)
                    break
            if inst is None:
                click.echo("no LLM candidate passed the consistency check",
                           err=True)
                sys.exit(EXIT_NO_INSTRUMENTATION)
        else:
            inst = instrument(bug, pt, gateway, compile_probe, config)
    except InstrumentationUnavailable as exc:
        click.echo(f"instrumentation unavailable: {exc}", err=True)
        sys.exit(EXIT_NO_INSTRUMENTATION)
    except TracefixError as exc:
        click.echo(f"instrumentation failed: {exc}", err=True)
        sys.exit(EXIT_NO_INSTRUMENTATION)
    out_path = base / "instrumented" / spec.buggy_file
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(inst.source)
    report = {
        "mode": inst.mode, "attempt_count": inst.attempt_count,
        "line_equivalence": inst.check_report.line_equivalence,
        "compilation": inst.check_report.compilation,
    }
    (base / "instrumented" / "check_report.json").write_text(
        json.dumps(report, indent=2) + "\n")
    click.echo(json.dumps(report, indent=2))
    sys.exit(EXIT_OK)


@main.command(name="trace")
@click.argument("spec_path", type=click.Path(exists=True))
@click.option("--workspace", type=click.Path(), default=None)
@click.option("--no-purify", is_flag=True, default=False)
@_gateway_options
def cmd_trace(spec_path, workspace, no_purify, **gateway_kwargs) -> None:
    """Run the instrumented code and print the captured runtime trace."""
    from .trace import parse_trace, render_table

    spec = _load_spec(spec_path)
    base = _workspace(workspace, spec)
    project, outcome = _baseline(spec, base)
    bug = spec.load_bug()
    pt = None
    if not no_purify:
        try:
            _ctx, pt_candidate, verdict = _purify(spec, project, outcome, base)
            if verdict.confirmed:
                pt = pt_candidate
        except (ParseFailure, TracefixError):
            pt = None
    inst_path = base / "instrumented" / spec.buggy_file
    if inst_path.exists():
        inst = InstrumentedFunction(inst_path.read_text(), "cached", 0,
                                    check_report=None)
    else:
        gateway = _make_gateway(**gateway_kwargs)
        compile_probe = harness.CandidateCompiler(project, bug)
        try:
            inst = instrument(bug, pt, gateway, compile_probe)
        except TracefixError as exc:
            click.echo(f"instrumentation unavailable: {exc}", err=True)
            sys.exit(EXIT_NO_INSTRUMENTATION)
        inst_path.parent.mkdir(parents=True, exist_ok=True)
        inst_path.write_text(inst.source)
    harness.restore_workspace(project)
    if pt is not None:
        harness.write_workspace_file(project, f"{pt.class_name}.java",
                                     pt.assembled_class)
    build = harness.apply_and_compile(project,
                                      [harness.function_edit(bug, inst.source)])
    if build.kind != "compile_ok":
        click.echo("instrumented project does not compile:\n"
                   + (build.stderr or build.stdout), err=True)
        sys.exit(EXIT_ERROR)
    test_id = pt.test_id if pt is not None else spec.failing_test
    try:
        run_outcome, trace = harness.capture_trace(project, inst, test_id, 0)
    except EmptyTrace as exc:
        click.echo(f"empty trace: {exc}", err=True)
        sys.exit(EXIT_EMPTY_TRACE)
    for suffix in (".log", ".json"):
        src = project.require_workspace() / f"trace_0{suffix}"
        if src.exists():
            shutil.copy(src, base / f"trace_0{suffix}")
    click.echo(render_table(trace))
    sys.exit(EXIT_OK)


@main.command(name="repair")
@click.argument("spec_path", type=click.Path(exists=True))
@click.option("--workspace", type=click.Path(), default=None)
@_budget_options
@_gateway_options
def cmd_repair(spec_path, workspace, **kwargs) -> None:
    """Run the full debugging-driven repair loop."""
    spec = _load_spec(spec_path)
    base = _workspace(workspace, spec)
    code, _detail = _repair_one(spec, base, kwargs)
    sys.exit(code)


def _repair_one(spec: BugSpec, base: Path, kwargs: dict) -> tuple[int, dict]:
    gateway_keys = ("gateway_backend", "transcript", "endpoint", "model",
                    "api_key_env", "temperature", "seed")
    gateway_kwargs = {k: kwargs[k] for k in gateway_keys}
    config = RepairConfig(
        n_session=kwargs["n_session"], k_round=kwargs["k_round"],
        n_augment=kwargs["n_augment"], m_inst=kwargs["m_inst"],
        temperature=kwargs["temperature"],
        full_suite=kwargs["full_suite"],
        purify_enabled=not kwargs["no_purify"],
        debug_enabled=not kwargs["no_debug"],
        augment_enabled=not kwargs["no_augment"])
    project, outcome = _baseline(spec, base)
    bug = spec.load_bug()
    gateway = _make_gateway(**gateway_kwargs)
    if gateway is None:
        click.echo("repair needs a gateway (--transcript PATH or "
                   "--gateway http)", err=True)
        return EXIT_ERROR, {"status": "error", "error": "no gateway"}
    pt = None
    if config.purify_enabled:
        try:
            _ctx, pt_candidate, verdict = _purify(spec, project, outcome, base)
            if verdict.confirmed:
                pt = pt_candidate
        except (ParseFailure, TracefixError):
            pt = None
    job = RepairJob(
        bug=bug, project=project, trigger_tests=[spec.failing_test],
        purified=pt,
        purified_file=f"{pt.class_name}.java" if pt else None,
        baseline_symptoms=outcome.symptoms())
    result = run_repair(job, config, gateway)
    write_reports(base / "report", job, result)
    calls = gateway.calls_for("direct_repair", "debug_repair", "augment")
    click.echo(json.dumps({**result.to_json(),
                           "patch_generation_calls": calls}, indent=2))
    if result.status == "plausible_found":
        return EXIT_OK, result.to_json()
    if result.status == "budget_exhausted":
        return EXIT_BUDGET_EXHAUSTED, result.to_json()
    click.echo(result.error, err=True)
    return EXIT_ERROR, result.to_json()


@main.command(name="eval")
@click.argument("list_path", type=click.Path(exists=True))
@click.option("--workspace", type=click.Path(), default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
@_budget_options
@_gateway_options
def cmd_eval(list_path, workspace, jobs, **kwargs) -> None:
    """Run repairs for every bug spec in a list file, in parallel."""
    lines = [ln.strip() for ln in Path(list_path).read_text().splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        click.echo("bug list is empty", err=True)
        sys.exit(EXIT_ERROR)
    base = Path(workspace) if workspace else Path.cwd() / "tracefix-eval"
    base.mkdir(parents=True, exist_ok=True)
    specs = []
    for line in lines:
        spec_path = (Path(list_path).parent / line).resolve() \
            if not Path(line).is_absolute() else Path(line)
        specs.append(str(spec_path))
    manifest = RunManifest(
        config_snapshot={k: v for k, v in kwargs.items()
                         if k not in ("api_key_env",)},
        tool_version=__version__)
    started = time.monotonic()
    tasks = [(spec_path, str(base / f"bug{idx:03d}"), kwargs)
             for idx, spec_path in enumerate(specs)]
    if jobs <= 1:
        results = [_eval_worker(t) for t in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_eval_worker, tasks))
    for name, status, detail in results:
        manifest.add(name, status, detail)
    manifest.wall_clock = time.monotonic() - started
    out = base / "manifest.json"
    out.write_text(json.dumps(manifest.to_json(), indent=2) + "\n")
    click.echo(json.dumps(manifest.counters(), indent=2))
    click.echo(f"manifest: {out}")
    sys.exit(EXIT_OK)


def _eval_worker(task: tuple) -> tuple[str, str, dict]:
    spec_path, workdir, kwargs = task
    try:
        spec = load_bugspec(spec_path)
    except BugSpecError as exc:
        return Path(spec_path).stem, "error", {"error": str(exc)}
    base = Path(workdir)
    base.mkdir(parents=True, exist_ok=True)
    try:
        _code, detail = _repair_one(spec, base, kwargs)
        return spec.display_name(), detail.get("status", "error"), {
            k: v for k, v in detail.items() if k != "status"}
    except SystemExit as exc:
        return spec.display_name(), "error", {"exit": exc.code}
    except Exception as exc:  # noqa: BLE001 - batch must not abort
        return spec.display_name(), "error", {"error": f"{type(exc).__name__}: {exc}"}


if __name__ == "__main__":
    main()
