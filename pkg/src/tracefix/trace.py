"""Parsing and rendering of runtime debug traces.

The instrumented function prints marker lines; this module turns captured
stdout into structured records and back. The grammar is total over lines
starting with "// DEBUG ": anything that does not parse is rejected with a
warning rather than silently kept.

    // START_DEBUG
    // DEBUG [VAR] g = -127          (split on the first " = ")
    // DEBUG [COND] g < 0 = true     (split on the last " = ")
    // DEBUG [LOOP] i < n = false
    // DEBUG [RETURN] 42             (no payload)
    // END_DEBUG
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyTrace
from .instrument import (
    COND_PREFIX, END_MARKER, LOOP_PREFIX, RETURN_PREFIX, START_MARKER,
    SUPPRESSED_VALUE, VAR_PREFIX,
)

_TAG_PREFIXES = (("VAR", VAR_PREFIX), ("COND", COND_PREFIX),
                 ("LOOP", LOOP_PREFIX), ("RETURN", RETURN_PREFIX))


@dataclass(frozen=True)
class TraceRecord:
    tag: str  # VAR | COND | LOOP | RETURN
    payload: str  # variable names or condition text; "" for RETURN
    value: str
    seq: int

    def render(self) -> str:
        prefix = dict(_TAG_PREFIXES)[self.tag]
        if self.tag == "RETURN":
            return prefix + self.value
        return f"{prefix}{self.payload} = {self.value}"


@dataclass
class RuntimeTrace:
    records: list[TraceRecord] = field(default_factory=list)
    complete: bool = False
    truncated: bool = False
    start_count: int = 0
    warnings: list[str] = field(default_factory=list)

    def render(self) -> str:
        """Marker lines only, reconstructed exactly."""
        lines: list[str] = []
        remaining = self.start_count
        if remaining:
            lines.append(START_MARKER)
            remaining -= 1
        for record in self.records:
            lines.append(record.render())
        if self.complete:
            lines.append(END_MARKER)
        return "\n".join(lines)

    def serialize(self) -> str:
        """Record lines for prompt embedding."""
        return "\n".join(record.render() for record in self.records)

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "truncated": self.truncated,
            "records": [
                {"seq": r.seq, "tag": r.tag, "payload": r.payload,
                 "value": r.value}
                for r in self.records
            ],
        }


def parse_trace(output: str) -> tuple[RuntimeTrace, list[str]]:
    """Split captured stdout into (trace, program-output lines)."""
    trace = RuntimeTrace()
    program: list[str] = []
    inside = False
    seq = 0
    for line in output.splitlines():
        stripped = line.rstrip("\r")
        if stripped == START_MARKER:
            inside = True
            trace.start_count += 1
            trace.complete = False
            continue
        if stripped == END_MARKER:
            if inside:
                trace.complete = True
            inside = False
            continue
        if stripped.startswith("// DEBUG "):
            record = _parse_record(stripped, seq)
            if record is None:
                trace.warnings.append(f"unparseable debug line: {stripped!r}")
                continue
            if not inside:
                trace.warnings.append(
                    f"debug record outside START/END: {stripped!r}")
                continue
            seq += 1
            trace.records.append(record)
            if record.value == SUPPRESSED_VALUE:
                trace.truncated = True
            continue
        program.append(line)
    return trace, program


def _parse_record(line: str, seq: int) -> TraceRecord | None:
    for tag, prefix in _TAG_PREFIXES:
        if not line.startswith(prefix):
            continue
        rest = line[len(prefix):]
        if tag == "RETURN":
            return TraceRecord(tag, "", rest, seq + 1)
        if tag == "VAR":
            idx = rest.find(" = ")
        else:
            idx = rest.rfind(" = ")
        if idx < 0:
            return None
        return TraceRecord(tag, rest[:idx], rest[idx + 3:], seq + 1)
    return None


def require_trace(trace: RuntimeTrace) -> RuntimeTrace:
    """Raise EmptyTrace when the instrumented region never executed."""
    if trace.start_count == 0:
        raise EmptyTrace("no START_DEBUG marker in captured output")
    return trace


def render_table(trace: RuntimeTrace) -> str:
    """Human-readable record table for the CLI."""
    rows = [f"{'seq':>4}  {'tag':<6}  {'payload':<32}  value"]
    for r in trace.records:
        payload = r.payload if len(r.payload) <= 32 else r.payload[:29] + "..."
        rows.append(f"{r.seq:>4}  {r.tag:<6}  {payload:<32}  {r.value}")
    footer = []
    if trace.truncated:
        footer.append("note: loop output was suppressed after the per-site cap")
    if not trace.complete:
        footer.append("note: trace ended without END_DEBUG (exceptional exit?)")
    return "\n".join(rows + footer)
