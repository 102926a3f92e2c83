"""Runtime value model for the embedded Java-subset runner.

Maps Java values onto Python ones: int/long -> int, double/float -> float,
boolean -> bool, String -> str, null -> None. char, arrays, and objects get
small wrapper classes so rendering and equality follow Java conventions.
Object identity strings use a per-run creation counter instead of hashes so
repeated runs produce identical output.
"""

from __future__ import annotations

import math
from typing import Any


class _IdCounter:
    def __init__(self):
        self.next_id = 1

    def take(self) -> int:
        value = self.next_id
        self.next_id += 1
        return value


_ids = _IdCounter()


def reset_object_ids() -> None:
    _ids.next_id = 1


class JChar:
    """A Java char: numeric in arithmetic, textual in concatenation."""

    __slots__ = ("cp",)

    def __init__(self, cp: int):
        self.cp = cp & 0xFFFF

    def __str__(self) -> str:
        return chr(self.cp)

    def __repr__(self) -> str:
        return f"JChar({chr(self.cp)!r})"

    def __eq__(self, other):
        if isinstance(other, JChar):
            return self.cp == other.cp
        if isinstance(other, int):
            return self.cp == other
        return NotImplemented

    def __hash__(self):
        return hash(self.cp)


class JArray:
    """Fixed-length Java array."""

    __slots__ = ("elem_type", "items", "oid")

    def __init__(self, elem_type: str, items: list):
        self.elem_type = elem_type
        self.items = items
        self.oid = _ids.take()

    @property
    def length(self) -> int:
        return len(self.items)

    def ref_string(self) -> str:
        sig = {"int": "[I", "double": "[D", "boolean": "[Z", "char": "[C",
               "long": "[J", "float": "[F", "byte": "[B", "short": "[S",
               }.get(self.elem_type, f"[L{self.elem_type};")
        return f"{sig}@{self.oid:x}"


class JavaObject:
    """Instance of a user-defined class."""

    __slots__ = ("jclass", "fields", "oid")

    def __init__(self, jclass):
        self.jclass = jclass
        self.fields: dict[str, Any] = {}
        self.oid = _ids.take()

    def ref_string(self) -> str:
        return f"{self.jclass.name}@{self.oid:x}"


class BuiltinObject:
    """Instance of a built-in library class (lists, maps, builders...)."""

    __slots__ = ("class_name", "state", "oid")

    def __init__(self, class_name: str, state: Any):
        self.class_name = class_name
        self.state = state
        self.oid = _ids.take()


class JThrown(Exception):
    """A Java exception in flight, with its rendered stack snapshot."""

    def __init__(self, class_name: str, message: str | None,
                 stack: list[tuple[str, str, str, int]] | None = None,
                 payload: Any = None):
        super().__init__(message or class_name)
        self.class_name = class_name
        self.message = message
        self.stack = stack or []
        self.payload = payload  # user exception object, if any

    def simple_name(self) -> str:
        return self.class_name.rsplit(".", 1)[-1]

    def format_java(self) -> str:
        head = self.class_name
        if self.message is not None:
            head += f": {self.message}"
        lines = [head]
        for cls, method, file, line in self.stack:
            lines.append(f"\tat {cls}.{method}({file}:{line})")
        return "\n".join(lines)


class StepBudgetExceeded(Exception):
    """Interpreter safety net against runaway loops/recursion."""


def render(value: Any) -> str:
    """Java string-conversion semantics (used by concat and println)."""
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, JChar):
        return str(value)
    if isinstance(value, float):
        return render_double(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, JArray):
        return value.ref_string()
    if isinstance(value, BuiltinObject):
        return render_builtin(value)
    if isinstance(value, JavaObject):
        return value.ref_string()
    return str(value)


def render_double(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    if x == int(x) and abs(x) < 1e16:
        return f"{int(x)}.0"
    text = repr(x)
    if "e" in text:  # 1e-05 -> 1.0E-5
        mant, exp = text.split("e")
        if "." not in mant:
            mant += ".0"
        exp_val = int(exp)
        return f"{mant}E{exp_val}"
    return text


def render_builtin(obj: BuiltinObject) -> str:
    state = obj.state
    if isinstance(state, list):
        return "[" + ", ".join(render(v) for v in state) + "]"
    if isinstance(state, dict):
        return "{" + ", ".join(f"{render(k)}={render(v)}" for k, v in state.items()) + "}"
    if obj.class_name == "StringBuilder":
        return "".join(state.parts)
    if obj.class_name == "java.awt.Color":
        r, g, b = state
        return f"java.awt.Color[r={r},g={g},b={b}]"
    return f"{obj.class_name}@{obj.oid:x}"


def java_equals(a: Any, b: Any) -> bool:
    """equals(...) semantics for the supported value universe."""
    if a is None or b is None:
        return a is b
    if isinstance(a, JChar) or isinstance(b, JChar):
        return isinstance(a, JChar) and isinstance(b, JChar) and a.cp == b.cp
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        # boxed comparison: JUnit assertEquals(1, x) with int x
        return type(a) is type(b) and a == b
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    if isinstance(a, BuiltinObject) and isinstance(b, BuiltinObject):
        if isinstance(a.state, list) and isinstance(b.state, list):
            return len(a.state) == len(b.state) and all(
                java_equals(x, y) for x, y in zip(a.state, b.state))
        if isinstance(a.state, dict) and isinstance(b.state, dict):
            if set(a.state) != set(b.state):
                return False
            return all(java_equals(a.state[k], b.state[k]) for k in a.state)
        return a is b
    return a is b


def is_java_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)
