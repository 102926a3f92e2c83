"""Tree-walking interpreter for the embedded Java-subset runner.

Executes parsed user classes with Java evaluation semantics on the subset the
fixture corpus uses: integer division truncates toward zero, `%` keeps the
dividend's sign, string concatenation renders operands Java-style, division
of an int by zero raises ArithmeticException while double division follows
IEEE rules. Call stacks are tracked so failures format like JVM stack traces.

Known deviations from a real JVM (documented in the README): 32-bit overflow
is not modeled, `==` on strings compares values, and reflection/threads are
absent. Fixtures stay inside the supported subset.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any

from . import builtins as jb
from .values import (
    BuiltinObject, JArray, JChar, JavaObject, JThrown, StepBudgetExceeded,
    java_equals, render, reset_object_ids, is_java_int,
)
from ..java import parser as jparser
from ..java.tree import Node, SyntaxTree


@dataclass
class FieldInfo:
    name: str
    type_text: str
    init: Node | None
    static: bool


class JClass:
    def __init__(self, name: str, tree: SyntaxTree, decl: Node, file_name: str):
        self.name = name
        self.tree = tree
        self.decl = decl
        self.file_name = file_name
        self.superclass: str | None = None
        if decl.f.get("extends") is not None:
            self.superclass = decl.f["extends"].f["base"].rsplit(".", 1)[-1]
        self.fields: list[FieldInfo] = []
        self.methods: dict[tuple[str, int], Node] = {}
        self.ctors: dict[int, Node] = {}
        self.static_values: dict[str, Any] = {}
        self.static_ready = False
        self.static_imports: list[str] = []
        for imp in tree.root.f.get("imports") or []:
            if imp.f["static"]:
                qualified = imp.f["name"]
                if imp.f["wildcard"]:
                    qualified += ".*"
                self.static_imports.append(qualified)
        for member in decl.f["body"].children:
            if member.kind == "field_decl":
                type_text = tree.text(member.f["type"])
                for decl_node in member.f["declarators"]:
                    self.fields.append(FieldInfo(
                        decl_node.f["name"],
                        type_text + "[]" * decl_node.f["dims"],
                        decl_node.f["init"], member.f["static"]))
            elif member.kind == "method_decl":
                if member.f["is_ctor"]:
                    self.ctors.setdefault(member.f["arity"], member)
                else:
                    self.methods.setdefault(
                        (member.f["name"], member.f["arity"]), member)

    def annotations_of(self, method: Node) -> set[str]:
        return {a.f["name"].rsplit(".", 1)[-1] for a in method.f["annotations"]}

    def test_methods(self) -> list[Node]:
        out = []
        for (name, _), node in sorted(self.methods.items()):
            annos = self.annotations_of(node)
            if "Test" in annos or (name.startswith("test")
                                   and not node.f["params"]):
                out.append(node)
        return out

    def lifecycle(self, which: str) -> list[Node]:
        """which: 'before' or 'after'."""
        anno = "Before" if which == "before" else "After"
        fallback = "setUp" if which == "before" else "tearDown"
        out = []
        for (name, arity), node in sorted(self.methods.items()):
            if anno in self.annotations_of(node) or (name == fallback and arity == 0):
                out.append(node)
        return out


class Registry:
    """All user classes loaded from a directory of .java files."""

    def __init__(self):
        self.classes: dict[str, JClass] = {}
        self.load_errors: list[str] = []

    @classmethod
    def from_dir(cls, root: str | Path) -> "Registry":
        reg = cls()
        for path in sorted(Path(root).rglob("*.java")):
            reg.load_file(path)
        return reg

    def load_file(self, path: Path) -> None:
        try:
            text = path.read_text()
        except OSError as exc:
            self.load_errors.append(f"{path.name}: unreadable: {exc}")
            return
        try:
            tree = jparser.parse_source(text)
        except Exception as exc:
            self.load_errors.append(f"{path.name}: parse failure: {exc}")
            return
        for err in tree.errors:
            self.load_errors.append(f"{path.name}: {err}")
        for decl in self._all_type_decls(tree):
            name = decl.f["name"]
            if name in self.classes:
                self.load_errors.append(
                    f"{path.name}: duplicate class {name}")
                continue
            self.classes[name] = JClass(name, tree, decl, path.name)

    @staticmethod
    def _all_type_decls(tree: SyntaxTree) -> list[Node]:
        return [n for n in tree.root.walk()
                if n.kind in ("class_decl", "interface_decl", "enum_decl")]

    def user_exception_supers(self) -> dict[str, str]:
        out = {}
        for cls in self.classes.values():
            if cls.superclass:
                out[cls.name] = jb.QUALIFIED.get(cls.superclass, cls.superclass)
        return out

    def mro(self, cls: JClass) -> list[JClass]:
        chain = [cls]
        seen = {cls.name}
        cur = cls
        while cur.superclass and cur.superclass in self.classes:
            cur = self.classes[cur.superclass]
            if cur.name in seen:
                break
            seen.add(cur.name)
            chain.append(cur)
        return chain


class _ClassRef:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name


class _PackageRef:
    __slots__ = ("prefix",)

    def __init__(self, prefix: str):
        self.prefix = prefix


class _Lambda:
    __slots__ = ("params", "body", "env", "this", "jclass")

    def __init__(self, params, body, env, this, jclass):
        self.params = params
        self.body = body
        self.env = env
        self.this = this
        self.jclass = jclass


class _Break(Exception):
    def __init__(self, label=None):
        self.label = label


class _Continue(Exception):
    def __init__(self, label=None):
        self.label = label


class _Return(Exception):
    def __init__(self, value):
        self.value = value


@dataclass
class Frame:
    class_name: str
    method_name: str
    file_name: str
    line: int = 0


class Env:
    """Scope chain for one invocation: list of dicts, innermost last."""

    __slots__ = ("scopes", "this", "jclass")

    def __init__(self, this: JavaObject | None, jclass: JClass):
        self.scopes: list[dict[str, Any]] = [{}]
        self.this = this
        self.jclass = jclass

    def push(self):
        self.scopes.append({})

    def pop(self):
        self.scopes.pop()

    def declare(self, name: str, value: Any):
        self.scopes[-1][name] = value

    def lookup(self, name: str):
        for scope in reversed(self.scopes):
            if name in scope:
                return True, scope[name]
        return False, None

    def assign(self, name: str, value: Any) -> bool:
        for scope in reversed(self.scopes):
            if name in scope:
                scope[name] = value
                return True
        return False


_STEP_LIMIT = int(os.environ.get("JRUN_STEP_LIMIT", "0"))


class Interp:
    def __init__(self, registry: Registry, step_limit: int = _STEP_LIMIT):
        self.registry = registry
        self.stdout_lines: list[str] = []
        self.stderr_lines: list[str] = []
        self.stdout_stream = BuiltinObject("java.io.PrintStream", "out")
        self.stderr_stream = BuiltinObject("java.io.PrintStream", "err")
        self.call_stack: list[Frame] = []
        self.steps = 0
        self.step_limit = step_limit
        self.exit_requested: int | None = None
        self.user_supers = registry.user_exception_supers()
        reset_object_ids()

    # ---- error plumbing ---------------------------------------------------

    def throw(self, class_name: str, message: str | None,
              frame: tuple[str, str, str, int] | None = None,
              payload: Any = None):
        stack: list[tuple[str, str, str, int]] = []
        if frame is not None:
            stack.append(frame)
        for fr in reversed(self.call_stack):
            stack.append((fr.class_name, fr.method_name, fr.file_name, fr.line))
        raise JThrown(class_name, message, stack, payload)

    def internal_error(self, text: str):
        self.throw("java.lang.Error", text)

    def request_exit(self, code: int):
        self.exit_requested = code
        raise _Return(None)

    def _tick(self):
        self.steps += 1
        if self.step_limit and self.steps > self.step_limit:
            raise StepBudgetExceeded(f"exceeded {self.step_limit} steps")

    # ---- class machinery ----------------------------------------------------

    def ensure_statics(self, cls: JClass):
        if cls.static_ready:
            return
        cls.static_ready = True
        if cls.superclass and cls.superclass in self.registry.classes:
            self.ensure_statics(self.registry.classes[cls.superclass])
        env = Env(None, cls)
        for info in cls.fields:
            if info.static:
                cls.static_values[info.name] = (
                    self.eval(info.init, env) if info.init is not None
                    else _default_value(info.type_text))
        for member in cls.decl.f["body"].children:
            if member.kind == "initializer_block" and member.f["static"]:
                self._push_frame(cls, "<clinit>")
                try:
                    self.exec_block(member.f["body"], env)
                finally:
                    self._pop_frame()

    def instantiate(self, cls: JClass, args: list, arg_types=None) -> JavaObject:
        self.ensure_statics(cls)
        obj = JavaObject(cls)
        for klass in reversed(self.registry.mro(cls)):
            env = Env(obj, klass)
            for info in klass.fields:
                if not info.static:
                    obj.fields[info.name] = (
                        self.eval(info.init, env) if info.init is not None
                        else _default_value(info.type_text))
            for member in klass.decl.f["body"].children:
                if member.kind == "initializer_block" and not member.f["static"]:
                    self.exec_block(member.f["body"], env)
        ctor = cls.ctors.get(len(args))
        if ctor is not None:
            self.invoke(cls, ctor, obj, args)
        elif args and cls.superclass in jb.EXCEPTION_SIMPLE_NAMES:
            obj.fields["__message"] = args[0]
        return obj

    def invoke(self, cls: JClass, method: Node, this: JavaObject | None,
               args: list) -> Any:
        env = Env(this, cls)
        for param, value in zip(method.f["params"], args):
            env.declare(param.f["name"], value)
        if method.f.get("varargs_pack"):
            pass
        params = method.f["params"]
        if params and params[-1].f["varargs"]:
            fixed = len(params) - 1
            packed = JArray(cls.tree.text(params[-1].f["type"]), list(args[fixed:]))
            env.scopes[0] = {p.f["name"]: v for p, v in zip(params[:fixed], args)}
            env.declare(params[-1].f["name"], packed)
        self._push_frame(cls, method.f["name"] if not method.f["is_ctor"]
                         else "<init>")
        try:
            body = method.f.get("body")
            if body is None:
                return None
            try:
                self.exec_block(body, env)
            except _Return as ret:
                return ret.value
            return None
        finally:
            self._pop_frame()

    def _push_frame(self, cls: JClass, method_name: str):
        if len(self.call_stack) > 200:
            self.throw("java.lang.StackOverflowError", None)
        self.call_stack.append(Frame(cls.name, method_name, cls.file_name))

    def _pop_frame(self):
        self.call_stack.pop()

    def _set_line(self, node: Node, env: Env):
        if self.call_stack:
            self.call_stack[-1].line = env.jclass.tree.line_of(node.start)

    # ---- statements -----------------------------------------------------------

    def exec_block(self, block: Node, env: Env):
        env.push()
        try:
            for stmt in block.children:
                self.exec_stmt(stmt, env)
        finally:
            env.pop()

    def exec_stmt(self, node: Node, env: Env):
        self._tick()
        kind = node.kind
        self._set_line(node, env)
        if kind == "local_var_decl":
            base_type = env.jclass.tree.text(node.f["type"])
            for decl in node.f["declarators"]:
                value = (self.eval(decl.f["init"], env)
                         if decl.f["init"] is not None
                         else _default_value(base_type))
                value = _coerce_to(base_type, decl.f["dims"], value)
                env.declare(decl.f["name"], value)
            return
        if kind == "expr_stmt":
            self.eval(node.f["expr"], env)
            return
        if kind == "block":
            self.exec_block(node, env)
            return
        if kind == "if_stmt":
            if _truthy(self.eval(node.f["cond"], env)):
                self.exec_stmt(node.f["then"], env)
            elif node.f["else_"] is not None:
                self.exec_stmt(node.f["else_"], env)
            return
        if kind == "while_stmt":
            while _truthy(self.eval(node.f["cond"], env)):
                self._tick()
                try:
                    self.exec_stmt(node.f["body"], env)
                except _Break as brk:
                    if brk.label:
                        raise
                    break
                except _Continue as cont:
                    if cont.label:
                        raise
            return
        if kind == "do_stmt":
            while True:
                self._tick()
                try:
                    self.exec_stmt(node.f["body"], env)
                except _Break as brk:
                    if brk.label:
                        raise
                    break
                except _Continue as cont:
                    if cont.label:
                        raise
                if not _truthy(self.eval(node.f["cond"], env)):
                    break
            return
        if kind == "for_stmt":
            env.push()
            try:
                for init in node.f["init"]:
                    if init.kind == "local_var_decl":
                        self.exec_stmt(init, env)
                    else:
                        self.eval(init, env)
                while (node.f["cond"] is None
                       or _truthy(self.eval(node.f["cond"], env))):
                    self._tick()
                    try:
                        self.exec_stmt(node.f["body"], env)
                    except _Break as brk:
                        if brk.label:
                            raise
                        break
                    except _Continue as cont:
                        if cont.label:
                            raise
                    finally:
                        pass
                    for upd in node.f["update"]:
                        self.eval(upd, env)
                else:
                    pass
            finally:
                env.pop()
            return
        if kind == "foreach_stmt":
            iterable = self.eval(node.f["iterable"], env)
            for item in _iterate(self, iterable):
                self._tick()
                env.push()
                env.declare(node.f["var_name"], item)
                try:
                    self.exec_stmt(node.f["body"], env)
                except _Break as brk:
                    if brk.label:
                        raise
                    break
                except _Continue as cont:
                    if cont.label:
                        raise
                finally:
                    env.pop()
            return
        if kind == "return_stmt":
            value = (self.eval(node.f["expr"], env)
                     if node.f["expr"] is not None else None)
            raise _Return(value)
        if kind == "throw_stmt":
            value = self.eval(node.f["expr"], env)
            self._raise_value(value)
            return
        if kind == "break_stmt":
            raise _Break(node.f["label"])
        if kind == "continue_stmt":
            raise _Continue(node.f["label"])
        if kind == "empty_stmt":
            return
        if kind == "try_stmt":
            self._exec_try(node, env)
            return
        if kind == "switch_stmt":
            self._exec_switch(node, env)
            return
        if kind == "assert_stmt":
            if not _truthy(self.eval(node.f["cond"], env)):
                msg = (render(self.eval(node.f["msg"], env))
                       if node.f["msg"] is not None else None)
                self.throw("java.lang.AssertionError", msg)
            return
        if kind == "labeled_stmt":
            try:
                self.exec_stmt(node.f["stmt"], env)
            except _Break as brk:
                if brk.label != node.f["label"]:
                    raise
            except _Continue as cont:
                if cont.label != node.f["label"]:
                    raise
            return
        if kind == "synchronized_stmt":
            self.eval(node.f["lock"], env)
            self.exec_block(node.f["body"], env)
            return
        if kind in ("class_decl", "interface_decl", "enum_decl"):
            return  # local classes are not executable in the subset
        if kind == "error":
            self.internal_error(
                f"unparsed statement at line "
                f"{env.jclass.tree.line_of(node.start)}")
        self.internal_error(f"unsupported statement kind {kind}")

    def _exec_try(self, node: Node, env: Env):
        try:
            try:
                self.exec_block(node.f["body"], env)
            except JThrown as thrown:
                for clause in node.f["catches"]:
                    caught_types = [clause.f["param_type"]]
                    type_names = [env.jclass.tree.text(t).rsplit(".", 1)[-1]
                                  for t in caught_types]
                    extra = _multi_catch_names(env.jclass.tree, clause)
                    type_names.extend(extra)
                    if any(self._matches_exception(thrown.class_name, t)
                           for t in type_names):
                        env.push()
                        env.declare(clause.f["param_name"],
                                    _exception_value(thrown))
                        try:
                            self.exec_block(clause.f["body"], env)
                        finally:
                            env.pop()
                        return
                raise
        finally:
            if node.f["finally_"] is not None:
                self.exec_block(node.f["finally_"], env)

    def _matches_exception(self, thrown_cls: str, catch_simple: str) -> bool:
        catch_qualified = jb.QUALIFIED.get(catch_simple, catch_simple)
        return jb.exception_is_subtype(thrown_cls, catch_qualified,
                                       self.user_supers)

    def _exec_switch(self, node: Node, env: Env):
        selector = self.eval(node.f["selector"], env)
        groups = node.f["groups"]
        start = None
        default_idx = None
        for i, group in enumerate(groups):
            if group.kind != "case_group":
                continue
            for label in group.f["labels"]:
                if label == "default":
                    default_idx = i
                elif start is None:
                    label_val = self.eval(label, env)
                    if java_equals(label_val, selector) or label_val == selector:
                        start = i
                        break
            if start is not None:
                break
        if start is None:
            start = default_idx
        if start is None:
            return
        try:
            for group in groups[start:]:
                if group.kind != "case_group":
                    continue
                for stmt in group.children:
                    self.exec_stmt(stmt, env)
        except _Break as brk:
            if brk.label:
                raise

    def _raise_value(self, value: Any):
        if isinstance(value, BuiltinObject) and jb.is_exception_class(value.class_name):
            self.throw(value.class_name, value.state, payload=value)
        if isinstance(value, JavaObject):
            message = value.fields.get("__message")
            self.throw(value.jclass.name, message, payload=value)
        if value is None:
            self.throw("java.lang.NullPointerException", None)
        self.internal_error(f"throw of non-exception value {render(value)}")

    # ---- expressions ---------------------------------------------------------

    def eval(self, node: Node, env: Env) -> Any:
        self._tick()
        kind = node.kind
        method = getattr(self, f"_eval_{kind}", None)
        if method is None:
            self.internal_error(f"unsupported expression kind {kind}")
        return method(node, env)

    def _eval_literal(self, node: Node, env: Env) -> Any:
        lit = node.f["lit_kind"]
        text = node.f["text"]
        if lit == "int":
            cleaned = text.replace("_", "").rstrip("lL")
            return int(cleaned, 0)
        if lit == "float":
            return float(text.replace("_", "").rstrip("fFdD"))
        if lit == "string":
            return _unescape(text[1:-1])
        if lit == "char":
            return JChar(ord(_unescape(text[1:-1])))
        if lit == "true":
            return True
        if lit == "false":
            return False
        if lit == "null":
            return None
        self.internal_error(f"bad literal {text}")

    def _eval_ident(self, node: Node, env: Env) -> Any:
        name = node.f["name"]
        found, value = env.lookup(name)
        if found:
            return value
        if env.this is not None and name in env.this.fields:
            return env.this.fields[name]
        for cls in self.registry.mro(env.jclass):
            self.ensure_statics(cls)
            if name in cls.static_values:
                return cls.static_values[name]
        if name in self.registry.classes or name in jb.BUILTIN_CLASSES:
            return _ClassRef(name)
        for imp in env.jclass.static_imports:
            owner, _, item = imp.rpartition(".")
            if item == name and not callable(item):
                handled, value = jb.static_field(
                    self, owner.rsplit(".", 1)[-1], name)
                if handled:
                    return value
        if name in ("java", "javax", "org", "com", "net", "io"):
            return _PackageRef(name)
        self.internal_error(f"cannot find symbol: variable {name}")

    def _eval_this_expr(self, node: Node, env: Env) -> Any:
        return env.this

    def _eval_super_expr(self, node: Node, env: Env) -> Any:
        return env.this

    def _eval_paren(self, node: Node, env: Env) -> Any:
        return self.eval(node.f["expr"], env)

    def _eval_binary(self, node: Node, env: Env) -> Any:
        op = node.f["op"]
        if op == "&&":
            return (_truthy(self.eval(node.f["left"], env))
                    and _truthy(self.eval(node.f["right"], env)))
        if op == "||":
            return (_truthy(self.eval(node.f["left"], env))
                    or _truthy(self.eval(node.f["right"], env)))
        left = self.eval(node.f["left"], env)
        right = self.eval(node.f["right"], env)
        return self._binary_op(op, left, right)

    def _binary_op(self, op: str, left: Any, right: Any) -> Any:
        if op == "+" and (isinstance(left, str) or isinstance(right, str)):
            return render(left) + render(right)
        if op in ("==", "!="):
            eq = _ref_equals(left, right)
            return eq if op == "==" else not eq
        if op in ("&", "|", "^") and isinstance(left, bool):
            table = {"&": left and right, "|": left or right,
                     "^": bool(left) != bool(right)}
            return table[op]
        lnum = _to_num(self, left)
        rnum = _to_num(self, right)
        if op == "+":
            return lnum + rnum
        if op == "-":
            return lnum - rnum
        if op == "*":
            return lnum * rnum
        if op == "/":
            return self._divide(lnum, rnum)
        if op == "%":
            return self._remainder(lnum, rnum)
        if op == "<":
            return lnum < rnum
        if op == "<=":
            return lnum <= rnum
        if op == ">":
            return lnum > rnum
        if op == ">=":
            return lnum >= rnum
        if op == "&":
            return lnum & rnum
        if op == "|":
            return lnum | rnum
        if op == "^":
            return lnum ^ rnum
        if op == "<<":
            return _wrap32(lnum << (rnum & 31))
        if op == ">>":
            return lnum >> (rnum & 31)
        if op == ">>>":
            return (lnum & 0xFFFFFFFF) >> (rnum & 31)
        self.internal_error(f"unsupported operator {op}")

    def _divide(self, a, b):
        if isinstance(a, int) and isinstance(b, int):
            if b == 0:
                self.throw("java.lang.ArithmeticException", "/ by zero")
            q = abs(a) // abs(b)
            return q if (a >= 0) == (b >= 0) else -q
        a, b = float(a), float(b)
        if b == 0.0:
            if a == 0.0 or math.isnan(a):
                return float("nan")
            sign = math.copysign(1.0, a) * math.copysign(1.0, b)
            return math.inf * sign
        return a / b

    def _remainder(self, a, b):
        if isinstance(a, int) and isinstance(b, int):
            if b == 0:
                self.throw("java.lang.ArithmeticException", "/ by zero")
            return a - self._divide(a, b) * b
        a, b = float(a), float(b)
        if b == 0.0:
            return float("nan")
        return math.fmod(a, b)

    def _eval_unary(self, node: Node, env: Env) -> Any:
        op = node.f["op"]
        value = self.eval(node.f["operand"], env)
        if op == "!":
            return not _truthy(value)
        num = _to_num(self, value)
        if op == "-":
            return -num
        if op == "+":
            return num
        if op == "~":
            return ~num
        self.internal_error(f"unsupported unary {op}")

    def _eval_update(self, node: Node, env: Env) -> Any:
        target = node.f["operand"]
        old = _to_num(self, self.eval(target, env))
        new = old + (1 if node.f["op"] == "++" else -1)
        self._assign_to(target, new, env)
        return new if node.f["prefix"] else old

    def _eval_assign(self, node: Node, env: Env) -> Any:
        op = node.f["op"]
        value = self.eval(node.f["value"], env)
        if op != "=":
            current = self.eval(node.f["target"], env)
            value = self._binary_op(op[:-1], current, value)
        self._assign_to(node.f["target"], value, env)
        return value

    def _assign_to(self, target: Node, value: Any, env: Env):
        kind = target.kind
        if kind == "ident":
            name = target.f["name"]
            if env.assign(name, value):
                return
            if env.this is not None and name in env.this.fields:
                env.this.fields[name] = value
                return
            for cls in self.registry.mro(env.jclass):
                self.ensure_statics(cls)
                if name in cls.static_values:
                    cls.static_values[name] = value
                    return
            self.internal_error(f"cannot assign to unknown variable {name}")
        if kind == "field_access":
            recv = self.eval(target.f["receiver"], env)
            name = target.f["name"]
            if isinstance(recv, JavaObject):
                recv.fields[name] = value
                return
            if isinstance(recv, _ClassRef):
                cls = self.registry.classes.get(recv.name)
                if cls is not None:
                    self.ensure_statics(cls)
                    cls.static_values[name] = value
                    return
            if recv is None:
                self.throw("java.lang.NullPointerException", None)
            self.internal_error(f"cannot assign to field {name}")
        if kind == "array_access":
            arr = self.eval(target.f["array"], env)
            idx = _to_num(self, self.eval(target.f["index"], env))
            self._array_store(arr, idx, value)
            return
        if kind == "paren":
            self._assign_to(target.f["expr"], value, env)
            return
        self.internal_error(f"invalid assignment target {kind}")

    def _array_store(self, arr: Any, idx: int, value: Any):
        if arr is None:
            self.throw("java.lang.NullPointerException", None)
        if not isinstance(arr, JArray):
            self.internal_error("indexed store on non-array")
        if idx < 0 or idx >= arr.length:
            self.throw("java.lang.ArrayIndexOutOfBoundsException",
                       f"Index {idx} out of bounds for length {arr.length}")
        arr.items[idx] = value

    def _eval_ternary(self, node: Node, env: Env) -> Any:
        if _truthy(self.eval(node.f["cond"], env)):
            return self.eval(node.f["then"], env)
        return self.eval(node.f["else_"], env)

    def _eval_cast(self, node: Node, env: Env) -> Any:
        value = self.eval(node.f["operand"], env)
        ctype = node.f["type"]
        if not ctype.f["primitive"] or ctype.f["dims"]:
            return value
        base = ctype.f["base"]
        if base in ("int", "long", "short", "byte"):
            num = _to_num(self, value)
            return math.trunc(num)
        if base in ("double", "float"):
            return float(_to_num(self, value))
        if base == "char":
            return JChar(int(_to_num(self, value)))
        if base == "boolean":
            return bool(value)
        return value

    def _eval_instanceof(self, node: Node, env: Env) -> bool:
        value = self.eval(node.f["expr"], env)
        type_name = node.f["type"].f["base"].rsplit(".", 1)[-1]
        return _instance_of(self, value, type_name)

    def _eval_field_access(self, node: Node, env: Env) -> Any:
        recv = self.eval(node.f["receiver"], env)
        name = node.f["name"]
        if isinstance(recv, _PackageRef):
            prefix = f"{recv.prefix}.{name}"
            for simple, qualified in jb.QUALIFIED.items():
                if qualified == prefix:
                    return _ClassRef(simple)
            return _PackageRef(prefix)
        if isinstance(recv, _ClassRef):
            cls = self.registry.classes.get(recv.name)
            if cls is not None:
                for klass in self.registry.mro(cls):
                    self.ensure_statics(klass)
                    if name in klass.static_values:
                        return klass.static_values[name]
            handled, value = jb.static_field(self, recv.name, name)
            if handled:
                return value
            self.internal_error(f"cannot find static field {recv.name}.{name}")
        if name == "length" and isinstance(recv, JArray):
            return recv.length
        if name == "this":
            return recv
        if recv is None:
            self.throw("java.lang.NullPointerException", None)
        if isinstance(recv, JavaObject):
            if name in recv.fields:
                return recv.fields[name]
            self.internal_error(
                f"cannot find field {name} on {recv.jclass.name}")
        self.internal_error(f"cannot read field {name} of {render(recv)}")

    def _eval_array_access(self, node: Node, env: Env) -> Any:
        arr = self.eval(node.f["array"], env)
        idx = _to_num(self, self.eval(node.f["index"], env))
        if arr is None:
            self.throw("java.lang.NullPointerException", None)
        if not isinstance(arr, JArray):
            self.internal_error("indexing non-array value")
        if idx < 0 or idx >= arr.length:
            self.throw("java.lang.ArrayIndexOutOfBoundsException",
                       f"Index {idx} out of bounds for length {arr.length}")
        return arr.items[idx]

    def _eval_new_object(self, node: Node, env: Env) -> Any:
        type_name = node.f["type"].f["base"].rsplit(".", 1)[-1]
        args = [self.eval(a, env) for a in node.f["args"]]
        if node.f["anon_body"] is not None:
            self.internal_error("anonymous classes are not supported")
        cls = self.registry.classes.get(type_name)
        if cls is not None:
            return self.instantiate(cls, args)
        handled, value = jb.construct(self, type_name, args)
        if handled:
            return value
        self.internal_error(f"cannot find class {type_name}")

    def _eval_qualified_new(self, node: Node, env: Env) -> Any:
        return self.eval(node.f["new"], env)

    def _eval_new_array(self, node: Node, env: Env) -> Any:
        base = node.f["type"].f["base"]
        dims = [int(_to_num(self, self.eval(d, env)))
                for d in node.f["dims_exprs"]]
        if node.f["init"] is not None:
            return self._build_array_init(node.f["init"], base, env)
        if not dims:
            return JArray(base, [])
        return self._alloc_array(base, dims, node.f["extra_dims"])

    def _alloc_array(self, base: str, dims: list[int], extra: int) -> JArray:
        size = dims[0]
        if size < 0:
            self.throw("java.lang.NegativeArraySizeException", str(size))
        if len(dims) == 1:
            fill = None if extra else jb._zero_of(base)
            return JArray(base, [fill if extra else jb._zero_of(base)
                                 for _ in range(size)])
        return JArray(base, [self._alloc_array(base, dims[1:], extra)
                             for _ in range(size)])

    def _build_array_init(self, init: Node, base: str, env: Env) -> JArray:
        items = []
        for elem in init.children:
            if elem.kind == "array_init":
                items.append(self._build_array_init(elem, base, env))
            else:
                items.append(_coerce_to(base, 0, self.eval(elem, env)))
        return JArray(base, items)

    def _eval_array_init(self, node: Node, env: Env) -> Any:
        return self._build_array_init(node, "Object", env)

    def _eval_lambda(self, node: Node, env: Env) -> Any:
        return _Lambda(node.f["params"], node.f["body"], env, env.this,
                       env.jclass)

    def _eval_method_ref(self, node: Node, env: Env) -> Any:
        self.internal_error("method references are not supported")

    def _eval_class_literal(self, node: Node, env: Env) -> Any:
        return BuiltinObject("java.lang.Class", None)

    def _eval_call(self, node: Node, env: Env) -> Any:
        name = node.f["name"]
        recv_node = node.f["receiver"]
        args = None
        if recv_node is None:
            args = [self.eval(a, env) for a in node.f["args"]]
            return self._call_unqualified(name, args, env, node)
        recv = self.eval(recv_node, env)
        args = [self.eval(a, env) for a in node.f["args"]]
        return self._call_on(recv, name, args, env, node)

    def _call_unqualified(self, name: str, args: list, env: Env,
                          node: Node) -> Any:
        if name in ("this", "super"):
            if name == "super" and args and env.this is not None \
                    and env.jclass.superclass in jb.EXCEPTION_SIMPLE_NAMES:
                env.this.fields["__message"] = args[0] if args else None
                return None
            if name == "super":
                sup = self.registry.classes.get(env.jclass.superclass or "")
                if sup is not None:
                    ctor = sup.ctors.get(len(args))
                    if ctor is not None:
                        return self.invoke(sup, ctor, env.this, args)
                return None
            ctor = env.jclass.ctors.get(len(args))
            if ctor is not None:
                return self.invoke(env.jclass, ctor, env.this, args)
            return None
        for cls in self.registry.mro(env.jclass):
            method = cls.methods.get((name, len(args)))
            if method is None:
                method = self._varargs_candidate(cls, name, len(args))
            if method is not None:
                this = env.this if not method.f["static"] else None
                return self.invoke(cls, method, this, args)
        for imp in env.jclass.static_imports:
            owner, _, item = imp.rpartition(".")
            simple_owner = owner.rsplit(".", 1)[-1]
            if item in ("*", name):
                handled, value = jb.static_call(self, simple_owner, name, args)
                if handled:
                    return value
                cls = self.registry.classes.get(simple_owner)
                if cls is not None:
                    method = cls.methods.get((name, len(args)))
                    if method is not None:
                        return self.invoke(cls, method, None, args)
        if env.this is not None:
            handled, value = jb.instance_call(self, env.this, name, args)
            if handled:
                return value
        self.internal_error(f"cannot find method {name}/{len(args)}")

    @staticmethod
    def _varargs_candidate(cls: JClass, name: str, nargs: int) -> Node | None:
        for (mname, arity), method in cls.methods.items():
            if mname != name:
                continue
            params = method.f["params"]
            if params and params[-1].f["varargs"] and nargs >= arity - 1:
                return method
        return None

    def _call_on(self, recv: Any, name: str, args: list, env: Env,
                 node: Node) -> Any:
        if isinstance(recv, _PackageRef):
            self.internal_error(f"package {recv.prefix} used like a value")
        if isinstance(recv, _ClassRef):
            cls = self.registry.classes.get(recv.name)
            if cls is not None:
                method = cls.methods.get((name, len(args)))
                if method is None:
                    method = self._varargs_candidate(cls, name, len(args))
                if method is not None:
                    self.ensure_statics(cls)
                    return self.invoke(cls, method, None, args)
            handled, value = jb.static_call(self, recv.name, name, args)
            if handled:
                return value
            self.internal_error(f"cannot find static method {recv.name}.{name}")
        if recv is None:
            self.throw("java.lang.NullPointerException",
                       f'Cannot invoke "{name}()" because value is null')
        if isinstance(recv, JavaObject):
            for cls in self.registry.mro(recv.jclass):
                method = cls.methods.get((name, len(args)))
                if method is None:
                    method = self._varargs_candidate(cls, name, len(args))
                if method is not None:
                    return self.invoke(cls, method, recv, args)
            if name == "getMessage":
                return recv.fields.get("__message")
            if name == "equals":
                return recv is args[0]
            if name == "toString":
                return recv.ref_string()
            self.internal_error(
                f"cannot find method {name}/{len(args)} on {recv.jclass.name}")
        if isinstance(recv, _Lambda):
            return self._call_lambda(recv, args)
        handled, value = jb.instance_call(self, recv, name, args)
        if handled:
            return value
        self.internal_error(
            f"cannot find method {name}/{len(args)} on {render(recv)}")

    def _call_lambda(self, lam: _Lambda, args: list) -> Any:
        env = Env(lam.this, lam.jclass)
        env.scopes = [scope for scope in lam.env.scopes] + [{}]
        for pname, value in zip(lam.params, args):
            env.declare(pname, value)
        if lam.body.kind == "block":
            try:
                self.exec_block(lam.body, env)
            except _Return as ret:
                return ret.value
            return None
        return self.eval(lam.body, env)


# ---- helpers -----------------------------------------------------------------


_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f",
            "0": "\0", "'": "'", '"': '"', "\\": "\\"}


def _unescape(body: str) -> str:
    out = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            if nxt == "u" and i + 5 < len(body):
                out.append(chr(int(body[i + 2:i + 6], 16)))
                i += 6
                continue
            out.append(_ESCAPES.get(nxt, nxt))
            i += 2
            continue
        out.append(c)
        i += 1
    return "".join(out)


def _default_value(type_text: str) -> Any:
    bare = type_text.split("<")[0].strip()
    if "[" in type_text:
        return None
    if bare in ("int", "long", "short", "byte"):
        return 0
    if bare in ("double", "float"):
        return 0.0
    if bare == "boolean":
        return False
    if bare == "char":
        return JChar(0)
    return None


def _coerce_to(base_type: str, extra_dims: int, value: Any) -> Any:
    bare = base_type.split("<")[0].strip().rstrip("[] ")
    if extra_dims or "[" in base_type:
        return value
    if bare in ("double", "float") and is_java_int(value):
        return float(value)
    if bare in ("double", "float") and isinstance(value, JChar):
        return float(value.cp)
    if bare in ("int", "long", "short", "byte") and isinstance(value, JChar):
        return value.cp
    return value


def _truthy(value: Any) -> bool:
    return bool(value)


def _to_num(interp: Interp, value: Any):
    if isinstance(value, JChar):
        return value.cp
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return value
    if value is None:
        interp.throw("java.lang.NullPointerException", None)
    interp.internal_error(f"number expected, got {render(value)}")


def _wrap32(v: int) -> int:
    v &= 0xFFFFFFFF
    return v - 0x100000000 if v >= 0x80000000 else v


def _ref_equals(a: Any, b: Any) -> bool:
    if a is None or b is None:
        return a is b
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    if isinstance(a, (int, float, JChar)) and isinstance(b, (int, float, JChar)):
        na = a.cp if isinstance(a, JChar) else a
        nb = b.cp if isinstance(b, JChar) else b
        return na == nb
    if isinstance(a, str) and isinstance(b, str):
        return a == b  # literal interning approximation
    return a is b


def _iterate(interp: Interp, value: Any):
    if isinstance(value, JArray):
        return list(value.items)
    if isinstance(value, BuiltinObject):
        if isinstance(value.state, list):
            return list(value.state)
        if isinstance(value.state, dict):
            return list(value.state.keys())
    if isinstance(value, str):
        return [JChar(ord(c)) for c in value]
    if value is None:
        interp.throw("java.lang.NullPointerException", None)
    interp.internal_error(f"cannot iterate over {render(value)}")


def _instance_of(interp: Interp, value: Any, type_name: str) -> bool:
    if value is None:
        return False
    if type_name == "Object":
        return True
    if type_name == "String" or type_name == "CharSequence":
        return isinstance(value, str)
    if type_name in ("Integer", "Long", "Short", "Byte"):
        return is_java_int(value)
    if type_name in ("Double", "Float"):
        return isinstance(value, float)
    if type_name == "Boolean":
        return isinstance(value, bool)
    if type_name == "Character":
        return isinstance(value, JChar)
    if isinstance(value, BuiltinObject):
        simple = value.class_name.rsplit(".", 1)[-1]
        if simple == type_name:
            return True
        if type_name == "List":
            return isinstance(value.state, list)
        if type_name == "Map":
            return isinstance(value.state, dict)
        return jb.exception_is_subtype(value.class_name,
                                       jb.QUALIFIED.get(type_name, type_name))
    if isinstance(value, JavaObject):
        for cls in interp.registry.mro(value.jclass):
            if cls.name == type_name:
                return True
        return jb.exception_is_subtype(value.jclass.name,
                                       jb.QUALIFIED.get(type_name, type_name),
                                       interp.user_supers)
    return False


def _multi_catch_names(tree: SyntaxTree, clause: Node) -> list[str]:
    # catch (A | B e): the parser records only the first type; recover the
    # rest syntactically from the clause header text.
    header = tree.text(clause)
    open_paren = header.find("(")
    close_paren = header.find(")")
    if open_paren < 0 or close_paren < 0:
        return []
    inner = header[open_paren + 1:close_paren]
    if "|" not in inner:
        return []
    names = []
    for part in inner.split("|")[1:]:
        part = part.strip().split()[0] if part.strip() else ""
        if part:
            names.append(part.rsplit(".", 1)[-1])
    return names


def _exception_value(thrown: JThrown) -> Any:
    if thrown.payload is not None:
        return thrown.payload
    return BuiltinObject(thrown.class_name, thrown.message)
