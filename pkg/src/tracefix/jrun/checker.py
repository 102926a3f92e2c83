"""Static load-time checks for the embedded runner: the fixture 'compile'.

Validates what the dependency and instrumentation oracles need from a
compiler: every file parses cleanly, class names are unique, every
unqualified identifier resolves to a local, parameter, field, class, or
static import, and every call resolves to a known method (name + arity).
Qualified member access on values of non-user types is not type-checked;
that mirrors the syntactic-local design of the analysis layer.
"""

from __future__ import annotations

from . import builtins as jb
from .interp import JClass, Registry
from ..java.tree import Node

_ASSERTION_NAMES_PREFIXES = ("assert", "verify")
_ASSERTION_EXACT = {"fail", "assertThat"}

_PACKAGE_ROOTS = {"java", "javax", "org", "com", "net", "io"}


def check_dir(root) -> list[str]:
    registry = Registry.from_dir(root)
    return check_registry(registry)


def check_registry(registry: Registry) -> list[str]:
    diags = list(registry.load_errors)
    for cls in registry.classes.values():
        diags.extend(_Checker(registry, cls).run())
    return diags


class _Checker:
    def __init__(self, registry: Registry, cls: JClass):
        self.registry = registry
        self.cls = cls
        self.tree = cls.tree
        self.diags: list[str] = []
        self.fields: set[str] = set()
        for klass in registry.mro(cls):
            self.fields.update(info.name for info in klass.fields)
        self.methods: dict[str, set[int]] = {}
        self.varargs_min: dict[str, int] = {}
        for klass in registry.mro(cls):
            for (name, arity), node in klass.methods.items():
                self.methods.setdefault(name, set()).add(arity)
                params = node.f["params"]
                if params and params[-1].f["varargs"]:
                    self.varargs_min[name] = min(
                        self.varargs_min.get(name, arity - 1), arity - 1)
        self.static_import_owners: list[str] = []
        self.static_import_names: set[str] = set()
        for imp in cls.static_imports:
            owner, _, item = imp.rpartition(".")
            if item == "*":
                self.static_import_owners.append(owner.rsplit(".", 1)[-1])
            else:
                self.static_import_names.add(item)

    def error(self, node: Node, text: str):
        line = self.tree.line_of(node.start)
        self.diags.append(f"{self.cls.file_name}:{line}: error: {text}")

    def run(self) -> list[str]:
        if self.cls.superclass and self.cls.superclass not in self.registry.classes \
                and self.cls.superclass not in jb.BUILTIN_CLASSES:
            self.error(self.cls.decl,
                       f"cannot find symbol: class {self.cls.superclass}")
        for member in self.cls.decl.f["body"].children:
            if member.kind == "field_decl":
                for decl in member.f["declarators"]:
                    if decl.f["init"] is not None:
                        self.check_expr(decl.f["init"], [set()])
            elif member.kind == "method_decl":
                self.check_method(member)
            elif member.kind == "initializer_block":
                self.check_block(member.f["body"], [set()])
            elif member.kind == "error":
                self.error(member, "unparseable class member")
        return self.diags

    def check_method(self, method: Node):
        scopes = [set()]
        for param in method.f["params"]:
            scopes[0].add(param.f["name"])
        body = method.f.get("body")
        if body is not None:
            self.check_block(body, scopes)

    # ---- statements ------------------------------------------------------

    def check_block(self, block: Node, scopes: list[set[str]]):
        scopes.append(set())
        for stmt in block.children:
            self.check_stmt(stmt, scopes)
        scopes.pop()

    def check_stmt(self, node: Node, scopes: list[set[str]]):
        kind = node.kind
        if kind == "local_var_decl":
            self.check_type(node.f["type"])
            for decl in node.f["declarators"]:
                if decl.f["init"] is not None:
                    self.check_expr(decl.f["init"], scopes)
                scopes[-1].add(decl.f["name"])
            return
        if kind == "expr_stmt":
            self.check_expr(node.f["expr"], scopes)
            return
        if kind == "block":
            self.check_block(node, scopes)
            return
        if kind == "if_stmt":
            self.check_expr(node.f["cond"], scopes)
            self.check_stmt_scoped(node.f["then"], scopes)
            if node.f["else_"] is not None:
                self.check_stmt_scoped(node.f["else_"], scopes)
            return
        if kind in ("while_stmt", "do_stmt"):
            self.check_expr(node.f["cond"], scopes)
            self.check_stmt_scoped(node.f["body"], scopes)
            return
        if kind == "for_stmt":
            scopes.append(set())
            for init in node.f["init"]:
                if init.kind == "local_var_decl":
                    self.check_stmt(init, scopes)
                    scopes[-1].update(init.f["names"])
                else:
                    self.check_expr(init, scopes)
            if node.f["cond"] is not None:
                self.check_expr(node.f["cond"], scopes)
            for upd in node.f["update"]:
                self.check_expr(upd, scopes)
            self.check_stmt_scoped(node.f["body"], scopes)
            scopes.pop()
            return
        if kind == "foreach_stmt":
            self.check_type(node.f["var_type"])
            self.check_expr(node.f["iterable"], scopes)
            scopes.append({node.f["var_name"]})
            self.check_stmt_scoped(node.f["body"], scopes)
            scopes.pop()
            return
        if kind == "return_stmt":
            if node.f["expr"] is not None:
                self.check_expr(node.f["expr"], scopes)
            return
        if kind == "throw_stmt":
            self.check_expr(node.f["expr"], scopes)
            return
        if kind == "try_stmt":
            self.check_block(node.f["body"], scopes)
            for clause in node.f["catches"]:
                self.check_type(clause.f["param_type"])
                scopes.append({clause.f["param_name"]})
                self.check_block(clause.f["body"], scopes)
                scopes.pop()
            if node.f["finally_"] is not None:
                self.check_block(node.f["finally_"], scopes)
            return
        if kind == "switch_stmt":
            self.check_expr(node.f["selector"], scopes)
            scopes.append(set())
            for group in node.f["groups"]:
                if group.kind != "case_group":
                    self.error(group, "unparseable switch label")
                    continue
                for stmt in group.children:
                    self.check_stmt(stmt, scopes)
            scopes.pop()
            return
        if kind == "assert_stmt":
            self.check_expr(node.f["cond"], scopes)
            if node.f["msg"] is not None:
                self.check_expr(node.f["msg"], scopes)
            return
        if kind == "labeled_stmt":
            self.check_stmt_scoped(node.f["stmt"], scopes)
            return
        if kind == "synchronized_stmt":
            self.check_expr(node.f["lock"], scopes)
            self.check_block(node.f["body"], scopes)
            return
        if kind in ("empty_stmt", "break_stmt", "continue_stmt",
                    "class_decl", "interface_decl", "enum_decl"):
            return
        if kind == "error":
            self.error(node, "unparseable statement")
            return

    def check_stmt_scoped(self, stmt: Node, scopes: list[set[str]]):
        scopes.append(set())
        self.check_stmt(stmt, scopes)
        scopes.pop()

    # ---- expressions ------------------------------------------------------

    def resolves_value(self, name: str, scopes: list[set[str]]) -> bool:
        return (any(name in s for s in scopes) or name in self.fields
                or name in self.static_import_names)

    def is_class_name(self, name: str) -> bool:
        return (name in self.registry.classes or name in jb.BUILTIN_CLASSES
                or self._is_type_var(name))

    @staticmethod
    def _is_type_var(name: str) -> bool:
        return len(name) <= 2 and name.isupper()

    def check_expr(self, node: Node, scopes: list[set[str]]):
        kind = node.kind
        if kind == "ident":
            name = node.f["name"]
            if not (self.resolves_value(name, scopes) or self.is_class_name(name)
                    or name in _PACKAGE_ROOTS):
                self.error(node, f"cannot find symbol: variable {name}")
            return
        if kind == "literal":
            return
        if kind == "call":
            self.check_call(node, scopes)
            return
        if kind == "field_access":
            self.check_expr(node.f["receiver"], scopes)
            return
        if kind == "new_object":
            self.check_new(node, scopes)
            return
        if kind == "lambda":
            inner = scopes + [set(node.f["params"])]
            self.check_expr(node.f["body"], inner) \
                if node.f["body"].kind != "block" \
                else self.check_block(node.f["body"], inner)
            return
        if kind in ("type", "wildcard_type"):
            self.check_type(node)
            return
        if kind == "cast":
            self.check_type(node.f["type"])
            self.check_expr(node.f["operand"], scopes)
            return
        if kind == "instanceof":
            self.check_expr(node.f["expr"], scopes)
            self.check_type(node.f["type"])
            return
        if kind in ("this_expr", "super_expr", "class_literal", "method_ref"):
            return
        if kind == "block":
            self.check_block(node, scopes)
            return
        if kind == "error":
            self.error(node, "unparseable expression")
            return
        for child in node.children:
            self.check_expr(child, scopes)

    def check_call(self, node: Node, scopes: list[set[str]]):
        name = node.f["name"]
        arity = len(node.f["args"])
        recv = node.f.get("receiver")
        for arg in node.f["args"]:
            self.check_expr(arg, scopes)
        if recv is None:
            if name in ("this", "super"):
                return
            if not self.method_resolves(name, arity):
                self.error(node, f"cannot find symbol: method {name}({arity} args)")
            return
        self.check_expr(recv, scopes)
        if recv.kind == "ident":
            rname = recv.f["name"]
            if not self.resolves_value(rname, scopes) \
                    and rname in self.registry.classes:
                target = self.registry.classes[rname]
                if not self._class_has_method(target, name, arity):
                    self.error(node, f"cannot find symbol: method "
                                     f"{rname}.{name}({arity} args)")

    def _class_has_method(self, cls: JClass, name: str, arity: int) -> bool:
        for klass in self.registry.mro(cls):
            if (name, arity) in klass.methods:
                return True
            for (mname, marity), m in klass.methods.items():
                if mname == name and m.f["params"] \
                        and m.f["params"][-1].f["varargs"] \
                        and arity >= marity - 1:
                    return True
        return False

    def method_resolves(self, name: str, arity: int) -> bool:
        if arity in self.methods.get(name, ()):
            return True
        if name in self.varargs_min and arity >= self.varargs_min[name]:
            return True
        if name in self.static_import_names:
            return True
        for owner in self.static_import_owners:
            if owner == "Assert" and (name in _ASSERTION_EXACT or any(
                    name.startswith(p) for p in _ASSERTION_NAMES_PREFIXES)):
                return True
            owner_cls = self.registry.classes.get(owner)
            if owner_cls is not None and self._class_has_method(
                    owner_cls, name, arity):
                return True
        # inherited from an opaque (builtin) superclass: assume resolvable
        if self.cls.superclass and self.cls.superclass not in self.registry.classes:
            return True
        return name in ("equals", "hashCode", "toString", "getClass")

    def check_new(self, node: Node, scopes: list[set[str]]):
        self.check_type(node.f["type"])
        base = node.f["type"].f["base"].rsplit(".", 1)[-1]
        for arg in node.f["args"]:
            self.check_expr(arg, scopes)
        cls = self.registry.classes.get(base)
        if cls is not None:
            arity = len(node.f["args"])
            if cls.ctors and arity not in cls.ctors and not (
                    arity == 1 and cls.superclass in jb.EXCEPTION_SIMPLE_NAMES):
                if not (arity == 0 and not cls.ctors):
                    self.error(node, f"no constructor {base}({arity} args)")
            return
        if base not in jb.BUILTIN_CLASSES and not self._is_type_var(base):
            self.error(node, f"cannot find symbol: class {base}")

    def check_type(self, node: Node):
        if node.kind == "wildcard_type":
            if node.f.get("bound") is not None:
                self.check_type(node.f["bound"])
            return
        if node.f.get("primitive"):
            return
        base = node.f["base"].rsplit(".", 1)[-1]
        root = node.f["base"].split(".")[0]
        if root in _PACKAGE_ROOTS:
            return
        if not (base in self.registry.classes or base in jb.BUILTIN_CLASSES
                or self._is_type_var(base)):
            self.error(node, f"cannot find symbol: class {base}")
        for arg in node.f.get("args", ()):
            self.check_type(arg)
