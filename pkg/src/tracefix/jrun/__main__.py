"""Command-line entry for the embedded runner.

    python -m tracefix.jrun check DIR
    python -m tracefix.jrun test  DIR Class#method [Class#method ...]
    python -m tracefix.jrun suite DIR
    python -m tracefix.jrun run   DIR Class [args...]

Exit codes: 0 ok / all pass, 1 test failures or runtime error, 2 load or
check errors.
"""

from __future__ import annotations

import sys

from .checker import check_dir, check_registry
from .interp import Registry
from .runner import discover_tests, run_main, run_tests


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) < 2:
        print(__doc__, file=sys.stderr)
        return 2
    command, root = argv[0], argv[1]
    if command == "check":
        diags = check_dir(root)
        for diag in diags:
            print(diag, file=sys.stderr)
        if diags:
            print(f"{len(diags)} error(s)", file=sys.stderr)
            return 2
        return 0

    registry = Registry.from_dir(root)
    if registry.load_errors:
        for err in registry.load_errors:
            print(err, file=sys.stderr)
        return 2

    if command == "test":
        test_ids = []
        for spec in argv[2:]:
            if "#" not in spec:
                print(f"bad test id {spec!r}, want Class#method", file=sys.stderr)
                return 2
            cls, method = spec.split("#", 1)
            test_ids.append((cls, method))
        if not test_ids:
            print("no test ids given", file=sys.stderr)
            return 2
        code, output = run_tests(registry, test_ids)
        sys.stdout.write(output)
        return code
    if command == "suite":
        diags = check_registry(registry)
        if diags:
            for diag in diags:
                print(diag, file=sys.stderr)
            return 2
        test_ids = discover_tests(registry)
        code, output = run_tests(registry, test_ids)
        sys.stdout.write(output)
        return code
    if command == "run":
        if len(argv) < 3:
            print("run needs a class name", file=sys.stderr)
            return 2
        code, output = run_main(registry, argv[2], argv[3:])
        sys.stdout.write(output)
        return code
    print(f"unknown command {command!r}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
