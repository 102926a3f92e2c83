"""Prompt construction for every model interaction.

Templates are versioned so job reports can pin exactly which wording
produced a reply. Section order in the debugging prompt is fixed: buggy
function, instrumented function, test context, runtime trace, initial
attempt, feedback history. When the assembled prompt would exceed the
context budget, oldest history turns are dropped first, then the trace is
middle-truncated; the buggy function is never cut.
"""

from __future__ import annotations

import re

PROMPT_VERSION = "1"

_FENCE_RE = re.compile(r"```[a-zA-Z0-9_+-]*\n(.*?)```", re.DOTALL)
_METHOD_DECL_RE = re.compile(
    r"^\s*(?:@\w+(?:\([^)]*\))?\s+)*(?:(?:public|protected|private|static|"
    r"final|synchronized|abstract|native)\s+)*[\w$<>\[\],.\s]+?[\w$]+\s*\(",
    re.MULTILINE)


def extract_code_block(reply: str) -> str | None:
    """Contents of the last fenced code block, fences stripped."""
    blocks = _FENCE_RE.findall(reply)
    if not blocks:
        return None
    return blocks[-1].strip("\n")


def extract_patch(reply: str) -> str | None:
    """Last fenced block that contains a method declaration."""
    blocks = [b for b in _FENCE_RE.findall(reply)
              if _METHOD_DECL_RE.search(b) and "{" in b]
    if not blocks:
        return None
    return blocks[-1].strip("\n")


def _test_context(pt) -> str:
    if pt is None:
        return "(original failing test used unmodified)"
    parts = [pt.minimized_method.strip()]
    for decl in pt.field_declarations:
        parts.append(decl.strip())
    for helper in pt.helper_methods:
        parts.append(helper.strip())
    return "\n\n".join(parts)


def breakpoint_prompt(pt, bug) -> str:
    lo, hi = bug.line_range
    return f"""You are debugging a Java program. A test fails because of a bug in the \
function below (located at {bug.file_path} lines {lo}-{hi}, class {bug.enclosing_class}).

Failing test and its dependencies:
```java
{_test_context(pt)}
```

Buggy function:
```java
{bug.source.strip()}
```

List the variables in the buggy function whose runtime values are essential \
for deducing the root cause. Reply with the variable names only, as a \
comma-separated list of backquoted names, e.g. `x`, `y`.
"""


def instrument_prompt(bug, vcrit) -> str:
    names = ", ".join(f"`{n}`" for n in vcrit.names)
    return f"""Insert print statements into the Java function below to reveal the runtime \
values of these critical variables: {names}.

Rules:
- Only add System.out.println(...) statements; never modify, delete, or \
reorder existing statements, and do not add comments.
- Begin the printed text of each statement with "// DEBUG " followed by the \
variable name and its value.
- Print "// START_DEBUG" on entry and "// END_DEBUG" before each return.

Function:
```java
{bug.source.strip()}
```

Reply with the complete instrumented function in a single fenced code block.
"""


def direct_repair_prompt(bug, symptoms: str) -> str:
    symptom_text = symptoms.strip() if symptoms and symptoms.strip() \
        else "none captured"
    return f"""The following Java function is buggy and makes a test fail.

Buggy function ({bug.file_path}, class {bug.enclosing_class}):
```java
{bug.source.strip()}
```

Observed failure:
```
{symptom_text}
```

Provide a fixed version of the function. Keep the same signature. Reply with \
the complete fixed function in a single fenced code block.
"""


def debug_repair_prompt(bug, inst, pt, trace_text: str,
                        first_patch: str | None, first_error: str | None,
                        history: list[tuple[str, str]],
                        context_budget: int = 24000) -> str:
    """Debugging-augmented prompt with feedback history, budget-trimmed."""
    head = f"""You previously failed to fix a buggy Java function directly. It has now been \
instrumented with print statements and executed under a minimized failing \
test; use the runtime trace to locate the logic error.

Buggy function ({bug.file_path}, class {bug.enclosing_class}):
```java
{bug.source.strip()}
```
"""
    sections: list[str] = []
    if inst is not None:
        sections.append(f"Instrumented function:\n```java\n{inst.source.strip()}\n```")
    sections.append(f"Failing test and dependencies:\n```java\n{_test_context(pt)}\n```")
    trace_section_idx = len(sections)
    sections.append(_trace_section(trace_text))
    if first_patch is not None:
        sections.append(
            "First repair attempt (failed):\n```java\n"
            f"{first_patch.strip()}\n```\nIts failure:\n```\n"
            f"{(first_error or 'unknown').strip()}\n```")
    tail = ("Provide a corrected version of the buggy function. Keep the same "
            "signature. Reply with the complete fixed function in a single "
            "fenced code block.\n")

    def assemble(hist: list[tuple[str, str]], trace: str) -> str:
        mid = list(sections)
        mid[trace_section_idx] = _trace_section(trace)
        for i, (patch, error) in enumerate(hist, start=1):
            mid.append(
                f"Later attempt {i} (failed):\n```java\n{patch.strip()}\n```\n"
                f"Its failure:\n```\n{(error or 'unknown').strip()}\n```")
        return head + "\n" + "\n\n".join(mid) + "\n\n" + tail

    hist = list(history)
    text = assemble(hist, trace_text)
    while len(text) > context_budget and hist:
        hist = hist[1:]  # oldest first
        text = assemble(hist, trace_text)
    trace = trace_text
    while len(text) > context_budget and len(trace) > 200:
        trace = _middle_truncate(trace, max(100, len(trace) // 2))
        text = assemble(hist, trace)
    return text


def _trace_section(trace_text: str) -> str:
    body = trace_text.strip() if trace_text and trace_text.strip() \
        else "(no runtime trace captured)"
    return f"Runtime trace from the instrumented run:\n```\n{body}\n```"


def _middle_truncate(text: str, target_len: int) -> str:
    if len(text) <= target_len:
        return text
    keep = max(40, (target_len - 20) // 2)
    return text[:keep] + "\n... (trace elided) ...\n" + text[-keep:]


def augment_prompt(bug, plausible: str, pt) -> str:
    return f"""A plausible fix for the buggy Java function below already passes the test \
suite. Produce an alternative fix that is logically similar but implemented \
differently (e.g. different expression structure or control flow). Keep the \
same signature.

Original buggy function:
```java
{bug.source.strip()}
```

Known plausible fix:
```java
{plausible.strip()}
```

Test context:
```java
{_test_context(pt)}
```

Reply with the complete alternative fixed function in a single fenced code \
block.
"""
