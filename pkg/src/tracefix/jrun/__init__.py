"""Embedded Java-subset runner used as the execution substrate for fixtures.

Real subject projects configure an external build/test toolchain through the
harness's shell-command templates; this package provides the same contract
(check = compile, test = run one test, suite = run all) for sandboxed corpus
projects without a JVM.
"""

from .checker import check_dir, check_registry
from .interp import Interp, Registry
from .runner import discover_tests, run_main, run_one, run_tests

__all__ = ["Registry", "Interp", "check_dir", "check_registry",
           "discover_tests", "run_tests", "run_one", "run_main"]
