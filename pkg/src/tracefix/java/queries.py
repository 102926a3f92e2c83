"""Statement, identifier, and call-graph queries over parsed Java trees.

These are the primitives the slicer, instrumenter, and dependency resolver
consume. Identifier extraction is scope-aware but purely syntactic-local:
declared types come from the method body, parameters, and class fields only.
Names whose declared type cannot be resolved are conservatively treated as
objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import lexer as lx
from .tree import Node, SyntaxTree
from ..errors import EmptyBody

DEFINED = "defined"
USED = "used"
RECEIVER = "receiver"

STATEMENT_KINDS = (
    "var-init", "var-assign", "expression-call", "if", "while", "for",
    "enhanced-for", "return-nonempty", "return-empty", "assert", "other",
)

_PACKAGE_ROOTS = {"java", "javax", "org", "com", "net", "io"}


@dataclass(frozen=True)
class AssertionConfig:
    """Which invoked names count as assertions (final name segment only)."""

    prefixes: tuple[str, ...] = ("assert", "verify")
    exact: tuple[str, ...] = ("fail",)

    def matches(self, name: str) -> bool:
        return name in self.exact or any(name.startswith(p) for p in self.prefixes)


DEFAULT_ASSERTIONS = AssertionConfig()


@dataclass(frozen=True)
class StatementRef:
    """A top-level statement of a method body, in source order."""

    index: int
    node: Node
    kind: str


@dataclass
class IdentifierSet:
    """Deduplicated (name, tag) pairs; a name may carry several tags."""

    entries: set[tuple[str, str]] = field(default_factory=set)

    def add(self, name: str, tag: str) -> None:
        self.entries.add((name, tag))

    def names(self) -> set[str]:
        return {name for name, _ in self.entries}

    def with_tag(self, tag: str) -> set[str]:
        return {name for name, t in self.entries if t == tag}

    def union(self, other: "IdentifierSet") -> "IdentifierSet":
        return IdentifierSet(self.entries | other.entries)

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)


class Scope:
    """Declared names visible inside one method: locals, params, fields."""

    def __init__(self, tree: SyntaxTree, method: Node | None = None,
                 class_decl: Node | None = None):
        self.tree = tree
        self.types: dict[str, str] = {}
        self.known_classes: set[str] = set()
        if class_decl is None and method is not None:
            class_decl = enclosing_class(method)
        for cls in tree.root.f.get("types", []) if tree.root.f.get("types") else []:
            self.known_classes.add(cls.f["name"])
        for imp in (tree.root.f.get("imports") or []):
            simple = imp.f["name"].rsplit(".", 1)[-1]
            if not imp.f["wildcard"]:
                self.known_classes.add(simple)
        if class_decl is not None:
            self.known_classes.add(class_decl.f["name"])
            for member in class_decl.f["body"].children:
                if member.kind == "field_decl":
                    type_text = tree.text(member.f["type"])
                    for name in member.f["names"]:
                        self.types.setdefault(name, type_text)
        if method is not None:
            for p in method.f["params"]:
                self.types[p.f["name"]] = tree.text(p.f["type"])
            body = method.f.get("body")
            if body is not None:
                for node in body.walk():
                    if node.kind == "local_var_decl":
                        type_text = tree.text(node.f["type"])
                        for name in node.f["names"]:
                            self.types.setdefault(name, type_text)
                    elif node.kind == "foreach_stmt":
                        self.types.setdefault(node.f["var_name"],
                                              tree.text(node.f["var_type"]))
                    elif node.kind == "catch_clause":
                        self.types.setdefault(node.f["param_name"],
                                              tree.text(node.f["param_type"]))

    def declared_type(self, name: str) -> str | None:
        return self.types.get(name)

    def resolves(self, name: str) -> bool:
        return name in self.types

    def looks_like_type(self, name: str) -> bool:
        return name in self.known_classes or (name[:1].isupper()
                                              and not self.resolves(name))


def enclosing_class(node: Node) -> Node | None:
    cur = node.parent
    while cur is not None:
        if cur.kind in ("class_decl", "interface_decl", "enum_decl"):
            return cur
        cur = cur.parent
    return None


def enclosing_method(node: Node) -> Node | None:
    cur = node
    while cur is not None:
        if cur.kind == "method_decl":
            return cur
        cur = cur.parent
    return None


# ---- statements ----------------------------------------------------------


def statements_of(tree: SyntaxTree, method: Node,
                  assertions: AssertionConfig = DEFAULT_ASSERTIONS
                  ) -> list[StatementRef]:
    """Top-level statements of a method body, in source order, classified."""
    if method.kind != "method_decl" or method.f.get("body") is None:
        raise EmptyBody(f"method {method.f.get('name')!r} has no body")
    refs = []
    for i, stmt in enumerate(method.f["body"].children):
        refs.append(StatementRef(i, stmt, classify_statement(stmt, assertions)))
    return refs


def classify_statement(stmt: Node,
                       assertions: AssertionConfig = DEFAULT_ASSERTIONS) -> str:
    kind = stmt.kind
    if kind == "local_var_decl":
        return "var-init"
    if kind == "expr_stmt":
        expr = stmt.f["expr"]
        if expr.kind in ("assign", "update"):
            return "var-assign"
        if expr.kind == "call":
            return "assert" if assertions.matches(expr.f["name"]) else "expression-call"
        if expr.kind in ("new_object", "qualified_new"):
            return "expression-call"
        return "other"
    if kind == "assert_stmt":
        return "assert"
    if kind == "if_stmt":
        return "if"
    if kind in ("while_stmt", "do_stmt"):
        return "while"
    if kind == "for_stmt":
        return "for"
    if kind == "foreach_stmt":
        return "enhanced-for"
    if kind == "return_stmt":
        return "return-nonempty" if stmt.f["expr"] is not None else "return-empty"
    return "other"


def is_assert(stmt: Node | StatementRef,
              assertions: AssertionConfig = DEFAULT_ASSERTIONS) -> bool:
    node = stmt.node if isinstance(stmt, StatementRef) else stmt
    return classify_statement(node, assertions) == "assert"


# ---- identifier extraction -------------------------------------------------


def fetch_var_and_obj(stmt: Node | StatementRef, scope: Scope) -> IdentifierSet:
    """All variable/object identifiers in a statement, tagged by role."""
    node = stmt.node if isinstance(stmt, StatementRef) else stmt
    out = IdentifierSet()
    _collect(node, scope, out)
    return out


def fetch_defined(stmt: Node | StatementRef, scope: Scope) -> IdentifierSet:
    """Identifiers introduced or assigned by the statement (targets only)."""
    full = fetch_var_and_obj(stmt, scope)
    return IdentifierSet({(n, t) for n, t in full.entries if t == DEFINED})


def fetch_used_objects(stmt: Node | StatementRef, scope: Scope) -> IdentifierSet:
    """Object-typed identifiers that are call receivers or call arguments."""
    node = stmt.node if isinstance(stmt, StatementRef) else stmt
    out = IdentifierSet()
    for call in _walk_statement_exprs(node):
        if call.kind not in ("call", "new_object", "qualified_new"):
            continue
        recv = call.f.get("receiver")
        if recv is not None:
            base = _base_variable(recv, scope)
            if base is not None and is_object(base, scope):
                out.add(base, RECEIVER)
                out.add(base, USED)
        for arg in call.f.get("args", ()):
            base = _base_variable(arg, scope)
            if base is not None and is_object(base, scope):
                out.add(base, USED)
    return out


def is_object(name: str, scope: Scope) -> bool:
    """False only for names provably declared with a primitive type."""
    declared = scope.declared_type(name)
    if declared is None:
        return True
    bare = declared.replace("[", " [").split()[0]
    return not (bare in lx.PRIMITIVE_TYPES and "[" not in declared)


def _walk_statement_exprs(node: Node):
    """Every expression node in a statement, including nested statements."""
    for n in node.walk():
        if n.kind in ("call", "new_object", "qualified_new", "assign", "update",
                      "ident", "field_access", "array_access", "binary",
                      "unary", "ternary", "cast", "paren", "instanceof",
                      "lambda", "method_ref", "array_init", "literal"):
            yield n


def _collect(node: Node, scope: Scope, out: IdentifierSet,
             lambda_params: frozenset[str] = frozenset()) -> None:
    kind = node.kind
    if kind == "ident":
        _add_variable(node.f["name"], USED, scope, out, lambda_params)
        return
    if kind == "literal":
        return
    if kind == "local_var_decl":
        for decl in node.f["declarators"]:
            out.add(decl.f["name"], DEFINED)
            if decl.f["init"] is not None:
                _collect(decl.f["init"], scope, out, lambda_params)
        return
    if kind == "assign":
        _collect_target(node.f["target"], scope, out, lambda_params)
        if node.f["op"] != "=":
            _collect(node.f["target"], scope, out, lambda_params)
        _collect(node.f["value"], scope, out, lambda_params)
        return
    if kind == "update":
        _collect_target(node.f["operand"], scope, out, lambda_params)
        _collect(node.f["operand"], scope, out, lambda_params)
        return
    if kind == "call":
        recv = node.f.get("receiver")
        if recv is not None:
            base = _base_variable(recv, scope)
            if base is not None and base not in lambda_params:
                out.add(base, RECEIVER)
            _collect(recv, scope, out, lambda_params)
        for arg in node.f["args"]:
            _collect(arg, scope, out, lambda_params)
        return
    if kind == "field_access":
        # Only the base variable of a dotted chain is an identifier use.
        base = _base_variable(node, scope)
        if base is not None and base not in lambda_params:
            out.add(base, USED)
        return
    if kind == "foreach_stmt":
        out.add(node.f["var_name"], DEFINED)
        _collect(node.f["iterable"], scope, out, lambda_params)
        _collect(node.f["body"], scope, out, lambda_params)
        return
    if kind == "lambda":
        inner = lambda_params | frozenset(node.f["params"])
        _collect(node.f["body"], scope, out, inner)
        return
    if kind in ("type", "wildcard_type", "annotation", "class_literal",
                "method_ref", "this_expr", "super_expr", "package_decl",
                "import_decl"):
        return
    for child in node.children:
        _collect(child, scope, out, lambda_params)


def _add_variable(name: str, tag: str, scope: Scope, out: IdentifierSet,
                  lambda_params: frozenset[str]) -> None:
    if name in lambda_params:
        return
    if not scope.resolves(name) and (scope.looks_like_type(name)
                                     or name in _PACKAGE_ROOTS):
        return
    out.add(name, tag)


def _collect_target(target: Node, scope: Scope, out: IdentifierSet,
                    lambda_params: frozenset[str]) -> None:
    """Assignment target: the mutated base variable counts as defined."""
    kind = target.kind
    if kind == "ident":
        if target.f["name"] not in lambda_params:
            out.add(target.f["name"], DEFINED)
        return
    if kind in ("field_access", "array_access", "paren", "cast"):
        base = _base_variable(target, scope)
        if base is not None and base not in lambda_params:
            out.add(base, DEFINED)
            out.add(base, USED)
        if kind == "array_access":
            _collect(target.f["index"], scope, out, lambda_params)
        return
    _collect(target, scope, out, lambda_params)


def _base_variable(expr: Node, scope: Scope) -> str | None:
    """Base identifier of an access chain, or None for type names/calls."""
    cur = expr
    while True:
        kind = cur.kind
        if kind == "ident":
            name = cur.f["name"]
            if scope.resolves(name):
                return name
            if scope.looks_like_type(name):
                return None
            if name in _PACKAGE_ROOTS:
                return None
            return name  # unresolved lowercase: conservatively a variable
        if kind in ("field_access", "array_access"):
            cur = cur.f.get("receiver") or cur.f.get("array")
        elif kind in ("paren", "cast"):
            cur = cur.f.get("expr") or cur.f.get("operand")
        elif kind == "call":
            recv = cur.f.get("receiver")
            if recv is None:
                return None
            cur = recv
        else:
            return None


# ---- call graph -------------------------------------------------------------


def fetch_callee_signatures(scope_nodes: Node | list[Node]) -> set[tuple[str, int]]:
    """(name, arity) of every method invoked within the given node(s)."""
    nodes = scope_nodes if isinstance(scope_nodes, list) else [scope_nodes]
    sigs: set[tuple[str, int]] = set()
    for root in nodes:
        for n in root.walk():
            if n.kind == "call" and n.f["name"] not in ("this", "super"):
                sigs.add((n.f["name"], len(n.f["args"])))
    return sigs


def fetch_method_sigs(class_decl: Node) -> set[tuple[str, int]]:
    return {(m.f["name"], m.f["arity"])
            for m in methods_of(class_decl) if not m.f["is_ctor"]}


def methods_of(class_decl: Node) -> list[Node]:
    return [m for m in class_decl.f["body"].children if m.kind == "method_decl"]


def find_methods(class_decl: Node, name: str, arity: int | None = None) -> list[Node]:
    return [m for m in methods_of(class_decl)
            if m.f["name"] == name and (arity is None or m.f["arity"] == arity)]


def fetch_declared_fields(class_decl: Node) -> dict[str, Node]:
    fields: dict[str, Node] = {}
    for member in class_decl.f["body"].children:
        if member.kind == "field_decl":
            for name in member.f["names"]:
                fields[name] = member
    return fields


def find_class(tree: SyntaxTree, name: str | None = None) -> Node | None:
    types = tree.root.f.get("types") or []
    if name is None:
        return types[0] if types else None
    for cls in types:
        if cls.f["name"] == name:
            return cls
        for n in cls.walk():
            if n.kind in ("class_decl", "interface_decl", "enum_decl") \
                    and n.f["name"] == name:
                return n
    return None


def find_method(tree: SyntaxTree, class_name: str | None, method_name: str
                ) -> Node | None:
    cls = find_class(tree, class_name)
    if cls is None:
        return None
    hits = find_methods(cls, method_name)
    return hits[0] if hits else None
