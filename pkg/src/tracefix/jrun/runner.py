"""Test discovery and execution for the embedded runner.

Report format is JUnit-flavored so the harness's failure-signature parser
sees realistic output:

    PASS Foo#testBar
    FAIL Foo#testBaz
    java.lang.AssertionError: expected:<1> but was:<2>
        at org.junit.Assert.assertEquals(Assert.java:0)
        at Foo.testBaz(Foo.java:14)
"""

from __future__ import annotations

from dataclasses import dataclass

from .interp import Interp, JClass, Registry
from .values import JThrown, StepBudgetExceeded


@dataclass
class TestOutcome:
    test_id: str
    passed: bool
    thrown: JThrown | None


def discover_tests(registry: Registry) -> list[tuple[str, str]]:
    found = []
    for name in sorted(registry.classes):
        cls = registry.classes[name]
        if cls.decl.kind != "class_decl":
            continue
        for method in cls.test_methods():
            found.append((name, method.f["name"]))
    return found


def run_one(interp: Interp, cls: JClass, method_name: str) -> TestOutcome:
    test_id = f"{cls.name}#{method_name}"
    method = None
    for (name, arity), node in cls.methods.items():
        if name == method_name and arity == 0:
            method = node
            break
    if method is None:
        return TestOutcome(test_id, False,
                           JThrown("java.lang.NoSuchMethodError", test_id))
    try:
        obj = interp.instantiate(cls, [])
        for setup in cls.lifecycle("before"):
            interp.invoke(cls, setup, obj, [])
        try:
            interp.invoke(cls, method, obj, [])
        finally:
            for teardown in cls.lifecycle("after"):
                interp.invoke(cls, teardown, obj, [])
    except JThrown as thrown:
        return TestOutcome(test_id, False, thrown)
    except StepBudgetExceeded as exc:
        return TestOutcome(test_id, False,
                           JThrown("java.lang.Error", str(exc)))
    except RecursionError:
        return TestOutcome(test_id, False,
                           JThrown("java.lang.StackOverflowError", None))
    return TestOutcome(test_id, True, None)


def format_report(outcome: TestOutcome) -> str:
    if outcome.passed:
        return f"PASS {outcome.test_id}"
    lines = [f"FAIL {outcome.test_id}"]
    if outcome.thrown is not None:
        lines.append(outcome.thrown.format_java())
    return "\n".join(lines)


def run_tests(registry: Registry, test_ids: list[tuple[str, str]]
              ) -> tuple[int, str]:
    """Run tests sequentially; returns (exit_code, combined stdout text)."""
    chunks: list[str] = []
    failures = 0
    for class_name, method_name in test_ids:
        cls = registry.classes.get(class_name)
        interp = Interp(registry)
        if cls is None:
            chunks.append(f"FAIL {class_name}#{method_name}\n"
                          f"java.lang.NoClassDefFoundError: {class_name}")
            failures += 1
            continue
        outcome = run_one(interp, cls, method_name)
        chunks.append("".join(interp.stdout_lines))
        chunks.append(format_report(outcome) + "\n")
        if not outcome.passed:
            failures += 1
    total = len(test_ids)
    chunks.append(f"TESTS RUN {total} FAILURES {failures}\n")
    return (0 if failures == 0 else 1), "".join(chunks)


def run_main(registry: Registry, class_name: str, args: list[str]
             ) -> tuple[int, str]:
    cls = registry.classes.get(class_name)
    if cls is None:
        return 2, f"java.lang.NoClassDefFoundError: {class_name}\n"
    main = cls.methods.get(("main", 1))
    if main is None:
        return 2, f"no main(String[]) in {class_name}\n"
    from .values import JArray
    interp = Interp(registry)
    try:
        interp.invoke(cls, main, None, [JArray("String", list(args))])
    except JThrown as thrown:
        interp.stdout_lines.append(
            'Exception in thread "main" ' + thrown.format_java() + "\n")
        return 1, "".join(interp.stdout_lines)
    except StepBudgetExceeded as exc:
        interp.stdout_lines.append(f"java.lang.Error: {exc}\n")
        return 1, "".join(interp.stdout_lines)
    code = interp.exit_requested or 0
    return code, "".join(interp.stdout_lines)
