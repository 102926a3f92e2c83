"""Failure-signature extraction from test-runner output.

Understands JVM-style stack traces:

    java.lang.IllegalArgumentException: Color parameter outside of ...
        at java.awt.Color.<init>(Color.java:0)
        at GrayPaintScale.getPaint(GrayPaintScale.java:16)

The signature keeps the exception type, the first message line, and the top
five frames.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

MAX_FRAMES = 5

ASSERTION_TYPES = frozenset({
    "java.lang.AssertionError",
    "org.junit.ComparisonFailure",
    "junit.framework.AssertionFailedError",
    "junit.framework.ComparisonFailure",
})

_FRAME_RE = re.compile(
    r"^\s+at\s+([\w$.]+)\.([\w$<>]+)\(([^():]+):(-?\d+)\)\s*$")
_HEAD_RE = re.compile(r"^((?:[\w$]+\.)+[\w$]+)(?::\s(.*))?$")


@dataclass(frozen=True)
class StackFrame:
    class_name: str
    method: str
    file: str
    line: int


@dataclass
class FailureSignature:
    exception_type: str
    message: str | None
    frames: list[StackFrame] = field(default_factory=list)

    @property
    def is_assertion_failure(self) -> bool:
        return self.exception_type in ASSERTION_TYPES

    def simple_type(self) -> str:
        return self.exception_type.rsplit(".", 1)[-1]

    def brief(self) -> str:
        text = self.exception_type
        if self.message:
            text += f": {self.message}"
        return text

    def deepest_frame_in(self, class_name: str, method: str) -> StackFrame | None:
        simple = class_name.rsplit(".", 1)[-1]
        for frame in self.frames:
            if frame.class_name.rsplit(".", 1)[-1] == simple \
                    and frame.method == method:
                return frame
        return None

    def kind_matches(self, other: "FailureSignature") -> bool:
        """Same exception type, and assertion-ness agrees."""
        if self.is_assertion_failure and other.is_assertion_failure:
            return True
        return self.exception_type == other.exception_type


def parse_failure_signature(output: str) -> FailureSignature | None:
    """First exception block (head line + `at ...` frames) in the output."""
    lines = output.splitlines()
    for i, line in enumerate(lines):
        head = _HEAD_RE.match(line.strip())
        if head is None:
            continue
        exc_type = head.group(1)
        if not _looks_like_exception(exc_type, lines, i):
            continue
        message = head.group(2)
        frames: list[StackFrame] = []
        for follow in lines[i + 1:]:
            m = _FRAME_RE.match(follow)
            if m is None:
                break
            if len(frames) < MAX_FRAMES:
                frames.append(StackFrame(m.group(1), m.group(2), m.group(3),
                                         int(m.group(4))))
        return FailureSignature(exc_type, message, frames)
    return None


def _looks_like_exception(name: str, lines: list[str], idx: int) -> bool:
    simple = name.rsplit(".", 1)[-1]
    if any(word in simple for word in ("Exception", "Error", "Failure",
                                       "Throwable")):
        return True
    return idx + 1 < len(lines) and _FRAME_RE.match(lines[idx + 1]) is not None
