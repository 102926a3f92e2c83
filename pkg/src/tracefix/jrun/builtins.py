"""Built-in library surface for the embedded runner.

Covers the slice of java.lang / java.util / java.awt / org.junit that the
fixture corpus and toy subject projects rely on. Each entry point returns
``(handled, value)`` so the interpreter can fall back to user-defined
classes when a name is not built in.
"""

from __future__ import annotations

import math
from typing import Any

from .values import (
    BuiltinObject, JArray, JChar, JavaObject, java_equals, render,
    render_double, is_java_int,
)

QUALIFIED = {
    "Object": "java.lang.Object",
    "String": "java.lang.String",
    "StringBuilder": "java.lang.StringBuilder",
    "CharSequence": "java.lang.CharSequence",
    "System": "java.lang.System",
    "Math": "java.lang.Math",
    "Integer": "java.lang.Integer",
    "Long": "java.lang.Long",
    "Double": "java.lang.Double",
    "Float": "java.lang.Float",
    "Boolean": "java.lang.Boolean",
    "Character": "java.lang.Character",
    "Objects": "java.util.Objects",
    "Arrays": "java.util.Arrays",
    "List": "java.util.List",
    "ArrayList": "java.util.ArrayList",
    "LinkedList": "java.util.LinkedList",
    "Map": "java.util.Map",
    "HashMap": "java.util.HashMap",
    "Set": "java.util.Set",
    "HashSet": "java.util.HashSet",
    "Collections": "java.util.Collections",
    "Color": "java.awt.Color",
    "Assert": "org.junit.Assert",
    "Throwable": "java.lang.Throwable",
    "Exception": "java.lang.Exception",
    "Error": "java.lang.Error",
    "RuntimeException": "java.lang.RuntimeException",
    "AssertionError": "java.lang.AssertionError",
    "IllegalArgumentException": "java.lang.IllegalArgumentException",
    "IllegalStateException": "java.lang.IllegalStateException",
    "NullPointerException": "java.lang.NullPointerException",
    "ArithmeticException": "java.lang.ArithmeticException",
    "NumberFormatException": "java.lang.NumberFormatException",
    "IndexOutOfBoundsException": "java.lang.IndexOutOfBoundsException",
    "ArrayIndexOutOfBoundsException": "java.lang.ArrayIndexOutOfBoundsException",
    "StringIndexOutOfBoundsException": "java.lang.StringIndexOutOfBoundsException",
    "UnsupportedOperationException": "java.lang.UnsupportedOperationException",
    "ComparisonFailure": "org.junit.ComparisonFailure",
}

BUILTIN_CLASSES = frozenset(QUALIFIED)

EXCEPTION_PARENT = {
    "java.lang.Exception": "java.lang.Throwable",
    "java.lang.Error": "java.lang.Throwable",
    "java.lang.AssertionError": "java.lang.Error",
    "org.junit.ComparisonFailure": "java.lang.AssertionError",
    "java.lang.RuntimeException": "java.lang.Exception",
    "java.lang.IllegalArgumentException": "java.lang.RuntimeException",
    "java.lang.IllegalStateException": "java.lang.RuntimeException",
    "java.lang.NullPointerException": "java.lang.RuntimeException",
    "java.lang.ArithmeticException": "java.lang.RuntimeException",
    "java.lang.NumberFormatException": "java.lang.IllegalArgumentException",
    "java.lang.IndexOutOfBoundsException": "java.lang.RuntimeException",
    "java.lang.ArrayIndexOutOfBoundsException": "java.lang.IndexOutOfBoundsException",
    "java.lang.StringIndexOutOfBoundsException": "java.lang.IndexOutOfBoundsException",
    "java.lang.UnsupportedOperationException": "java.lang.RuntimeException",
}

EXCEPTION_SIMPLE_NAMES = frozenset(
    name for name in QUALIFIED
    if QUALIFIED[name] in EXCEPTION_PARENT or name == "Throwable")


def is_exception_class(qualified: str) -> bool:
    return qualified == "java.lang.Throwable" or qualified in EXCEPTION_PARENT


def exception_is_subtype(cls: str, of: str, user_supers=None) -> bool:
    """Walk the (builtin + user) exception hierarchy."""
    cur: str | None = cls
    seen = set()
    while cur is not None and cur not in seen:
        if cur == of:
            return True
        seen.add(cur)
        nxt = EXCEPTION_PARENT.get(cur)
        if nxt is None and user_supers is not None:
            nxt = user_supers.get(cur)
        cur = nxt
    return False


def _as_int(v: Any) -> int:
    if isinstance(v, JChar):
        return v.cp
    if isinstance(v, bool):
        raise TypeError("boolean where number expected")
    return v


def _num(v: Any) -> int | float:
    return v.cp if isinstance(v, JChar) else v


# ---- constructors ---------------------------------------------------------


def construct(interp, simple: str, args: list) -> tuple[bool, Any]:
    if simple in ("ArrayList", "LinkedList"):
        if args and isinstance(args[0], BuiltinObject) and isinstance(args[0].state, list):
            return True, BuiltinObject("java.util." + simple, list(args[0].state))
        return True, BuiltinObject("java.util." + simple, [])
    if simple in ("HashMap",):
        return True, BuiltinObject("java.util.HashMap", {})
    if simple in ("HashSet",):
        init = list(args[0].state) if args else []
        return True, BuiltinObject("java.util.HashSet", _unique(init))
    if simple == "StringBuilder":
        seed = [args[0]] if args and isinstance(args[0], str) else []
        return True, BuiltinObject("StringBuilder", _SBState(seed))
    if simple == "String":
        if not args:
            return True, ""
        if isinstance(args[0], JArray):
            return True, "".join(str(c) for c in args[0].items)
        return True, render(args[0])
    if simple == "Object":
        return True, BuiltinObject("java.lang.Object", None)
    if simple == "Color":
        r, g, b = (_as_int(a) for a in args[:3])
        bad = [name for name, v in (("Red", r), ("Green", g), ("Blue", b))
               if v < 0 or v > 255]
        if bad:
            interp.throw("java.lang.IllegalArgumentException",
                         "Color parameter outside of expected range: "
                         + " ".join(bad),
                         frame=("java.awt.Color", "<init>", "Color.java", 0))
        return True, BuiltinObject("java.awt.Color", (r, g, b))
    if simple in EXCEPTION_SIMPLE_NAMES:
        message = args[0] if args and isinstance(args[0], str) else None
        return True, BuiltinObject(QUALIFIED[simple], message)
    return False, None


class _SBState:
    __slots__ = ("parts",)

    def __init__(self, parts: list[str]):
        self.parts = parts


def _unique(items: list) -> list:
    out: list = []
    for it in items:
        if not any(java_equals(it, o) for o in out):
            out.append(it)
    return out


# ---- static fields and methods ---------------------------------------------


_STATIC_FIELDS = {
    ("System", "out"): lambda interp: interp.stdout_stream,
    ("System", "err"): lambda interp: interp.stderr_stream,
    ("Integer", "MAX_VALUE"): lambda interp: 2147483647,
    ("Integer", "MIN_VALUE"): lambda interp: -2147483648,
    ("Long", "MAX_VALUE"): lambda interp: 2**63 - 1,
    ("Double", "MAX_VALUE"): lambda interp: 1.7976931348623157e308,
    ("Double", "NaN"): lambda interp: float("nan"),
    ("Double", "POSITIVE_INFINITY"): lambda interp: float("inf"),
    ("Double", "NEGATIVE_INFINITY"): lambda interp: float("-inf"),
    ("Math", "PI"): lambda interp: math.pi,
    ("Math", "E"): lambda interp: math.e,
    ("Color", "BLACK"): lambda interp: BuiltinObject("java.awt.Color", (0, 0, 0)),
    ("Color", "WHITE"): lambda interp: BuiltinObject("java.awt.Color", (255, 255, 255)),
    ("Color", "RED"): lambda interp: BuiltinObject("java.awt.Color", (255, 0, 0)),
    ("Color", "GRAY"): lambda interp: BuiltinObject("java.awt.Color", (128, 128, 128)),
}


def static_field(interp, simple: str, name: str) -> tuple[bool, Any]:
    fn = _STATIC_FIELDS.get((simple, name))
    if fn is None:
        return False, None
    return True, fn(interp)


def static_call(interp, simple: str, name: str, args: list) -> tuple[bool, Any]:
    key = (simple, name)
    if simple == "Math":
        return _math_call(interp, name, args)
    if simple == "Integer":
        if name == "parseInt":
            return True, _parse_int(interp, args[0])
        if name == "valueOf":
            return True, _parse_int(interp, args[0]) if isinstance(args[0], str) else args[0]
        if name == "toString":
            return True, str(_as_int(args[0]))
        if name in ("max", "min"):
            return True, (max if name == "max" else min)(_as_int(args[0]), _as_int(args[1]))
        if name == "compare":
            a, b = _as_int(args[0]), _as_int(args[1])
            return True, (a > b) - (a < b)
    if simple == "Double":
        if name == "parseDouble":
            try:
                return True, float(args[0])
            except ValueError:
                interp.throw("java.lang.NumberFormatException",
                             f'For input string: "{args[0]}"')
        if name == "valueOf":
            return True, float(args[0]) if isinstance(args[0], str) else args[0]
        if name == "isNaN":
            return True, isinstance(args[0], float) and math.isnan(args[0])
        if name == "toString":
            return True, render_double(args[0])
        if name == "compare":
            a, b = _num(args[0]), _num(args[1])
            return True, (a > b) - (a < b)
    if simple == "Boolean":
        if name == "parseBoolean":
            return True, isinstance(args[0], str) and args[0].lower() == "true"
        if name == "valueOf":
            return True, args[0] if isinstance(args[0], bool) else str(args[0]).lower() == "true"
    if simple == "Character":
        return _character_call(interp, name, args)
    if simple == "String":
        if name == "valueOf":
            return True, render(args[0])
        if name == "join":
            sep = args[0]
            items = args[1].state if isinstance(args[1], BuiltinObject) else list(args[1:])
            return True, sep.join(render(i) for i in items)
        if name == "format":
            return True, _java_format(args[0], args[1:])
    if simple == "Objects":
        if name == "equals":
            return True, java_equals(args[0], args[1])
        if name == "isNull":
            return True, args[0] is None
        if name == "requireNonNull":
            if args[0] is None:
                interp.throw("java.lang.NullPointerException",
                             args[1] if len(args) > 1 else None)
            return True, args[0]
        if name == "toString":
            return True, render(args[0])
        if name == "hash" or name == "hashCode":
            return True, 0
    if simple == "Arrays":
        if name == "toString":
            arr = args[0]
            if arr is None:
                return True, "null"
            return True, "[" + ", ".join(render(v) for v in arr.items) + "]"
        if name == "asList":
            return True, BuiltinObject("java.util.ArrayList", list(args))
        if name == "equals":
            a, b = args
            if a is None or b is None:
                return True, a is b
            return True, (len(a.items) == len(b.items)
                          and all(java_equals(x, y) for x, y in zip(a.items, b.items)))
        if name == "copyOf":
            arr, n = args[0], _as_int(args[1])
            items = list(arr.items[:n]) + [_zero_of(arr.elem_type)] * max(0, n - len(arr.items))
            return True, JArray(arr.elem_type, items)
        if name == "fill":
            for i in range(len(args[0].items)):
                args[0].items[i] = args[1]
            return True, None
        if name == "sort":
            args[0].items.sort(key=_num)
            return True, None
    if simple == "Collections":
        if name == "emptyList":
            return True, BuiltinObject("java.util.ArrayList", [])
        if name == "sort":
            args[0].state.sort(key=_num)
            return True, None
        if name in ("max", "min"):
            return True, (max if name == "max" else min)(args[0].state, key=_num)
        if name == "reverse":
            args[0].state.reverse()
            return True, None
    if simple == "System":
        if name == "currentTimeMillis" or name == "nanoTime":
            return True, 0
        if name == "exit":
            interp.request_exit(_as_int(args[0]))
            return True, None
        if name == "arraycopy":
            src, sp, dst, dp, ln = args
            dst.items[_as_int(dp):_as_int(dp) + _as_int(ln)] = \
                src.items[_as_int(sp):_as_int(sp) + _as_int(ln)]
            return True, None
    if simple == "Assert":
        return assertion_call(interp, name, args)
    if key == ("Long", "parseLong"):
        return True, _parse_int(interp, args[0])
    return False, None


def _zero_of(elem_type: str) -> Any:
    if elem_type in ("int", "long", "short", "byte"):
        return 0
    if elem_type in ("double", "float"):
        return 0.0
    if elem_type == "boolean":
        return False
    if elem_type == "char":
        return JChar(0)
    return None


def _parse_int(interp, s: Any) -> int:
    try:
        return int(str(s), 10)
    except ValueError:
        interp.throw("java.lang.NumberFormatException",
                     f'For input string: "{s}"')
        raise AssertionError("unreachable")


def _math_call(interp, name: str, args: list) -> tuple[bool, Any]:
    vals = [_num(a) for a in args]
    if name == "abs":
        return True, abs(vals[0])
    if name == "max":
        return True, max(vals)
    if name == "min":
        return True, min(vals)
    if name == "floor":
        return True, float(math.floor(vals[0]))
    if name == "ceil":
        return True, float(math.ceil(vals[0]))
    if name == "sqrt":
        v = vals[0]
        return True, float("nan") if v < 0 else math.sqrt(v)
    if name == "pow":
        return True, float(vals[0]) ** float(vals[1])
    if name == "round":
        return True, int(math.floor(vals[0] + 0.5))
    if name == "signum":
        return True, (vals[0] > 0) - (vals[0] < 0) + 0.0
    if name == "hypot":
        return True, math.hypot(vals[0], vals[1])
    if name == "log":
        return True, math.log(vals[0]) if vals[0] > 0 else float("nan")
    if name == "exp":
        return True, math.exp(vals[0])
    if name == "toRadians":
        return True, math.radians(vals[0])
    if name in ("sin", "cos", "tan"):
        return True, getattr(math, name)(vals[0])
    return False, None


def _character_call(interp, name: str, args: list) -> tuple[bool, Any]:
    if name == "codePointAt":
        seq, idx = args[0], _as_int(args[1])
        if idx < 0 or idx >= len(seq):
            interp.throw("java.lang.StringIndexOutOfBoundsException",
                         f"index {idx}, length {len(seq)}",
                         frame=("java.lang.Character", "codePointAt",
                                "Character.java", 0))
        return True, ord(seq[idx])
    if name == "charCount":
        return True, 1
    ch = args[0]
    c = chr(ch.cp) if isinstance(ch, JChar) else chr(_as_int(ch))
    if name == "isDigit":
        return True, c.isdigit()
    if name == "isLetter":
        return True, c.isalpha()
    if name == "isLetterOrDigit":
        return True, c.isalnum()
    if name == "isWhitespace":
        return True, c.isspace()
    if name == "isUpperCase":
        return True, c.isupper()
    if name == "isLowerCase":
        return True, c.islower()
    if name == "toUpperCase":
        return True, JChar(ord(c.upper()))
    if name == "toLowerCase":
        return True, JChar(ord(c.lower()))
    if name == "getNumericValue":
        return True, int(c) if c.isdigit() else -1
    if name == "toString":
        return True, c
    return False, None


def _java_format(fmt: str, args: list) -> str:
    out = []
    i = 0
    ai = 0
    while i < len(fmt):
        ch = fmt[i]
        if ch == "%" and i + 1 < len(fmt):
            spec = fmt[i + 1]
            if spec == "%":
                out.append("%")
            elif spec in "dsf":
                val = args[ai]
                ai += 1
                out.append(render(val) if spec != "f" else f"{_num(val):f}")
            else:
                out.append(ch + spec)
            i += 2
            continue
        out.append(ch)
        i += 1
    return "".join(out)


# ---- JUnit assertions -------------------------------------------------------


_ASSERT_FRAME = ("org.junit.Assert", None, "Assert.java", 0)


def assertion_call(interp, name: str, args: list) -> tuple[bool, Any]:
    frame = ("org.junit.Assert", name, "Assert.java", 0)

    def fail(message: str | None, kind: str = "java.lang.AssertionError"):
        interp.throw(kind, message, frame=frame)

    if name == "fail":
        fail(args[0] if args else None)
        return True, None
    if name in ("assertTrue", "assertFalse"):
        msg, cond = (args[0], args[1]) if len(args) == 2 else (None, args[0])
        want = name == "assertTrue"
        if bool(cond) is not want:
            fail(msg)
        return True, None
    if name in ("assertNull", "assertNotNull"):
        msg, val = (args[0], args[1]) if len(args) == 2 else (None, args[0])
        if (val is None) is not (name == "assertNull"):
            if name == "assertNull":
                fail(_with_prefix(msg, f"expected null, but was:<{render(val)}>"))
            fail(msg)
        return True, None
    if name == "assertSame":
        msg, a, b = (args[0], args[1], args[2]) if len(args) == 3 else (None, args[0], args[1])
        if a is not b:
            fail(_with_prefix(msg, f"expected same:<{render(a)}> was not:<{render(b)}>"))
        return True, None
    if name == "assertArrayEquals":
        msg, a, b = (args[0], args[1], args[2]) if len(args) == 3 else (None, args[0], args[1])
        ok = (a is b) or (a is not None and b is not None
                          and len(a.items) == len(b.items)
                          and all(java_equals(x, y) for x, y in zip(a.items, b.items)))
        if not ok:
            fail(_with_prefix(msg, "array contents differ"))
        return True, None
    if name == "assertEquals":
        return True, _assert_equals(interp, frame, args)
    return False, None


def _with_prefix(msg: str | None, body: str) -> str:
    return f"{msg} {body}" if msg else body


def _assert_equals(interp, frame, args: list) -> None:
    msg: str | None = None
    rest = args
    if len(args) >= 3 and isinstance(args[0], str) and not isinstance(args[-1], (int, float)):
        msg, rest = args[0], args[1:]
    if len(rest) == 3 and isinstance(rest[2], (int, float)) \
            and isinstance(rest[0], (int, float)) and not isinstance(rest[0], bool):
        expected, actual, delta = _num(rest[0]), _num(rest[1]), _num(rest[2])
        if math.isnan(expected) and math.isnan(actual):
            return None
        if abs(expected - actual) > delta:
            interp.throw("java.lang.AssertionError",
                         _with_prefix(msg, f"expected:<{render(rest[0])}> but was:<{render(rest[1])}>"),
                         frame=frame)
        return None
    if len(rest) == 3 and isinstance(rest[0], str):
        msg, rest = rest[0], rest[1:]
    expected, actual = rest[0], rest[1]
    if _loose_number_equals(expected, actual) or java_equals(expected, actual):
        return None
    if isinstance(expected, str) and isinstance(actual, str):
        interp.throw("org.junit.ComparisonFailure",
                     _with_prefix(msg, f"expected:<[{expected}]> but was:<[{actual}]>"),
                     frame=frame)
    interp.throw("java.lang.AssertionError",
                 _with_prefix(msg, f"expected:<{render(expected)}> but was:<{render(actual)}>"),
                 frame=frame)


def _loose_number_equals(a: Any, b: Any) -> bool:
    # assertEquals(2, list.size()) style int comparisons
    if is_java_int(a) and is_java_int(b):
        return a == b
    return False


# ---- instance methods -------------------------------------------------------


def instance_call(interp, recv: Any, name: str, args: list) -> tuple[bool, Any]:
    if isinstance(recv, str):
        return _string_call(interp, recv, name, args)
    if isinstance(recv, BuiltinObject):
        state = recv.state
        if recv.class_name == "java.io.PrintStream":
            return _stream_call(interp, recv, name, args)
        if isinstance(state, list):
            return _list_call(interp, recv, name, args)
        if isinstance(state, dict):
            return _map_call(interp, recv, name, args)
        if recv.class_name == "StringBuilder":
            return _sb_call(interp, recv, name, args)
        if recv.class_name == "java.awt.Color":
            r, g, b = state
            if name == "getRed":
                return True, r
            if name == "getGreen":
                return True, g
            if name == "getBlue":
                return True, b
            if name == "getRGB":
                return True, (255 << 24) | (r << 16) | (g << 8) | b
        if is_exception_class(recv.class_name):
            if name == "getMessage":
                return True, state
            if name == "toString":
                text = recv.class_name
                if state is not None:
                    text += ": " + str(state)
                return True, text
        if name == "equals":
            return True, java_equals(recv, args[0])
        if name == "toString":
            return True, render(recv)
        if name == "hashCode":
            return True, recv.oid
    if isinstance(recv, bool):
        if name == "equals":
            return True, recv is args[0]
        if name == "toString":
            return True, render(recv)
    if isinstance(recv, (int, float, JChar)):
        if name == "equals":
            return True, java_equals(recv, args[0])
        if name == "toString":
            return True, render(recv)
        if name == "intValue":
            return True, int(_num(recv))
        if name == "doubleValue":
            return True, float(_num(recv))
        if name == "compareTo":
            a, b = _num(recv), _num(args[0])
            return True, (a > b) - (a < b)
    return False, None


def _stream_call(interp, recv: BuiltinObject, name: str, args: list
                 ) -> tuple[bool, Any]:
    if name not in ("println", "print", "printf", "flush"):
        return False, None
    sink = interp.stdout_lines if recv.state == "out" else interp.stderr_lines
    if name == "flush":
        return True, None
    if name == "printf":
        text = _java_format(args[0], args[1:])
    else:
        text = render(args[0]) if args else ""
    if name == "println":
        text += "\n"
    sink.append(text)
    return True, None


def _string_call(interp, recv: str, name: str, args: list) -> tuple[bool, Any]:
    if name == "length":
        return True, len(recv)
    if name == "charAt":
        i = _as_int(args[0])
        if i < 0 or i >= len(recv):
            interp.throw("java.lang.StringIndexOutOfBoundsException",
                         f"String index out of range: {i}",
                         frame=("java.lang.String", "charAt", "String.java", 0))
        return True, JChar(ord(recv[i]))
    if name == "substring":
        start = _as_int(args[0])
        end = _as_int(args[1]) if len(args) > 1 else len(recv)
        if start < 0 or end > len(recv) or start > end:
            interp.throw("java.lang.StringIndexOutOfBoundsException",
                         f"begin {start}, end {end}, length {len(recv)}",
                         frame=("java.lang.String", "substring", "String.java", 0))
        return True, recv[start:end]
    if name == "indexOf":
        probe = str(args[0]) if isinstance(args[0], JChar) else args[0]
        frm = _as_int(args[1]) if len(args) > 1 else 0
        return True, recv.find(probe, frm)
    if name == "lastIndexOf":
        probe = str(args[0]) if isinstance(args[0], JChar) else args[0]
        return True, recv.rfind(probe)
    if name == "contains":
        return True, args[0] in recv
    if name == "equals":
        return True, isinstance(args[0], str) and recv == args[0]
    if name == "equalsIgnoreCase":
        return True, isinstance(args[0], str) and recv.lower() == args[0].lower()
    if name == "compareTo":
        other = args[0]
        return True, (recv > other) - (recv < other)
    if name == "isEmpty":
        return True, len(recv) == 0
    if name == "toUpperCase":
        return True, recv.upper()
    if name == "toLowerCase":
        return True, recv.lower()
    if name == "trim" or name == "strip":
        return True, recv.strip()
    if name == "replace":
        a = str(args[0]) if isinstance(args[0], JChar) else args[0]
        b = str(args[1]) if isinstance(args[1], JChar) else args[1]
        return True, recv.replace(a, b)
    if name == "startsWith":
        return True, recv.startswith(args[0])
    if name == "endsWith":
        return True, recv.endswith(args[0])
    if name == "concat":
        return True, recv + args[0]
    if name == "split":
        parts = recv.split(args[0])
        return True, JArray("String", parts)
    if name == "toCharArray":
        return True, JArray("char", [JChar(ord(c)) for c in recv])
    if name == "toString":
        return True, recv
    if name == "hashCode":
        h = 0
        for c in recv:
            h = (31 * h + ord(c)) & 0xFFFFFFFF
        return True, h - 0x100000000 if h >= 0x80000000 else h
    if name == "matches":
        import re as _re
        return True, bool(_re.fullmatch(args[0], recv))
    return False, None


def _list_call(interp, recv: BuiltinObject, name: str, args: list
               ) -> tuple[bool, Any]:
    items = recv.state
    if name == "add":
        if len(args) == 2:
            items.insert(_as_int(args[0]), args[1])
        else:
            items.append(args[0])
        return True, True
    if name == "addAll":
        items.extend(args[0].state)
        return True, True
    if name == "get":
        i = _as_int(args[0])
        if i < 0 or i >= len(items):
            interp.throw("java.lang.IndexOutOfBoundsException",
                         f"Index: {i}, Size: {len(items)}",
                         frame=("java.util.ArrayList", "get", "ArrayList.java", 0))
        return True, items[i]
    if name == "set":
        i = _as_int(args[0])
        if i < 0 or i >= len(items):
            interp.throw("java.lang.IndexOutOfBoundsException",
                         f"Index: {i}, Size: {len(items)}",
                         frame=("java.util.ArrayList", "set", "ArrayList.java", 0))
        old = items[i]
        items[i] = args[1]
        return True, old
    if name == "size":
        return True, len(items)
    if name == "isEmpty":
        return True, not items
    if name == "contains":
        return True, any(java_equals(args[0], it) for it in items)
    if name == "indexOf":
        for i, it in enumerate(items):
            if java_equals(args[0], it):
                return True, i
        return True, -1
    if name == "remove":
        if is_java_int(args[0]):
            i = args[0]
            if i < 0 or i >= len(items):
                interp.throw("java.lang.IndexOutOfBoundsException",
                             f"Index: {i}, Size: {len(items)}",
                             frame=("java.util.ArrayList", "remove", "ArrayList.java", 0))
            return True, items.pop(i)
        for i, it in enumerate(items):
            if java_equals(args[0], it):
                items.pop(i)
                return True, True
        return True, False
    if name == "clear":
        items.clear()
        return True, None
    if name == "toString":
        return True, render(recv)
    if name == "equals":
        return True, java_equals(recv, args[0])
    if name == "iterator":  # used implicitly by for-each
        return True, iter(list(items))
    return False, None


def _map_call(interp, recv: BuiltinObject, name: str, args: list
              ) -> tuple[bool, Any]:
    table = recv.state

    def find_key(key):
        for k in table:
            if java_equals(k, key):
                return k
        return None

    if name == "put":
        k = find_key(args[0])
        old = table.get(k) if k is not None else None
        table[args[0] if k is None else k] = args[1]
        return True, old
    if name == "get":
        k = find_key(args[0])
        return True, table[k] if k is not None else None
    if name == "getOrDefault":
        k = find_key(args[0])
        return True, table[k] if k is not None else args[1]
    if name == "containsKey":
        return True, find_key(args[0]) is not None
    if name == "remove":
        k = find_key(args[0])
        return True, table.pop(k) if k is not None else None
    if name == "size":
        return True, len(table)
    if name == "isEmpty":
        return True, not table
    if name == "keySet":
        return True, BuiltinObject("java.util.HashSet", list(table.keys()))
    if name == "values":
        return True, BuiltinObject("java.util.ArrayList", list(table.values()))
    if name == "clear":
        table.clear()
        return True, None
    if name == "toString":
        return True, render(recv)
    return False, None


def _sb_call(interp, recv: BuiltinObject, name: str, args: list
             ) -> tuple[bool, Any]:
    state: _SBState = recv.state
    if name == "append":
        state.parts.append(render(args[0]))
        return True, recv
    if name == "toString":
        return True, "".join(state.parts)
    if name == "length":
        return True, sum(len(p) for p in state.parts)
    if name == "reverse":
        text = "".join(state.parts)[::-1]
        state.parts[:] = [text]
        return True, recv
    if name == "charAt":
        text = "".join(state.parts)
        return _string_call(interp, text, "charAt", args)
    if name == "insert":
        text = "".join(state.parts)
        i = _as_int(args[0])
        state.parts[:] = [text[:i] + render(args[1]) + text[i:]]
        return True, recv
    if name == "setLength":
        text = "".join(state.parts)[:_as_int(args[0])]
        state.parts[:] = [text]
        return True, None
    return False, None
