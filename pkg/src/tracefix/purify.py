"""Failing-test purification: backward slicing plus dependency closure.

Slices the failing test method down to the statements the failure-triggering
statement actually depends on, re-traversing whenever a newly admitted
statement introduces an unseen object identifier (aliases mutate shared
state, so a single backward pass is not enough). The minimized method is
then closed over the helper methods and class fields it still references and
reassembled into a standalone, compilable test class.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import InvalidContext
from .java import (
    JavaAdapter, IdentifierSet, Scope, StatementRef, SyntaxTree,
    enclosing_class, fetch_callee_signatures, fetch_declared_fields,
    fetch_defined, fetch_method_sigs, fetch_used_objects, fetch_var_and_obj,
    find_methods, is_object,
)
from .java.tree import Node
from .sigparse import FailureSignature

LIFECYCLE_ANNOTATIONS = {"Before", "After", "BeforeClass", "AfterClass",
                         "BeforeEach", "AfterEach"}
LIFECYCLE_NAMES = {"setUp", "tearDown"}


@dataclass
class FailingTestContext:
    test_class: SyntaxTree
    class_decl: Node
    test_method: Node
    fail_stmt: StatementRef
    failure_signature: FailureSignature

    @property
    def class_name(self) -> str:
        return self.class_decl.f["name"]

    @property
    def method_name(self) -> str:
        return self.test_method.f["name"]


@dataclass
class SliceResult:
    slice: list[StatementRef]
    required: IdentifierSet
    pass_count: int


@dataclass
class PurifiedTest:
    minimized_method: str
    helper_methods: list[str]
    field_declarations: list[str]
    assembled_class: str
    class_name: str
    method_name: str
    slice_result: SliceResult | None = None
    original_stmt_count: int = 0

    @property
    def test_id(self) -> str:
        return f"{self.class_name}#{self.method_name}"

    def slice_report(self, verdict: str | None = None) -> dict:
        return {
            "original_stmt_count": self.original_stmt_count,
            "slice_stmt_count": (len(self.slice_result.slice)
                                 if self.slice_result else self.original_stmt_count),
            "pass_count": (self.slice_result.pass_count
                           if self.slice_result else 0),
            "helper_count": len(self.helper_methods),
            "field_count": len(self.field_declarations),
            "verdict": verdict,
        }


@dataclass
class ValidationVerdict:
    status: str  # confirmed | divergent | skipped
    reason: str = ""

    @property
    def confirmed(self) -> bool:
        return self.status == "confirmed"


def build_context(tree: SyntaxTree, class_name: str, method_name: str,
                  signature: FailureSignature,
                  adapter: JavaAdapter | None = None) -> FailingTestContext:
    adapter = adapter or JavaAdapter()
    from .java import find_class, find_method

    class_decl = find_class(tree, class_name)
    if class_decl is None:
        raise InvalidContext(f"class {class_name} not found")
    method = find_method(tree, class_name, method_name)
    if method is None or method.f.get("body") is None:
        raise InvalidContext(f"test method {class_name}#{method_name} not found")
    stmts = adapter.statements_of(tree, method)
    if not stmts:
        raise InvalidContext("test method has an empty body")
    fail_stmt = find_failing_statement(tree, method, stmts, signature, adapter)
    return FailingTestContext(tree, class_decl, method, fail_stmt, signature)


def find_failing_statement(tree: SyntaxTree, method: Node,
                           stmts: list[StatementRef],
                           signature: FailureSignature,
                           adapter: JavaAdapter) -> StatementRef:
    """Pick s_fail: deepest in-method stack frame, then message heuristics."""
    cls = enclosing_class(method)
    class_name = cls.f["name"] if cls is not None else ""
    frame = signature.deepest_frame_in(class_name, method.f["name"])
    if frame is not None:
        for ref in stmts:
            lo, hi = tree.line_span(ref.node)
            if lo <= frame.line <= hi:
                return ref
    asserts = [ref for ref in stmts if adapter.is_assert(ref)]
    if signature.message:
        expectations = re.findall(r"<\[?(.*?)\]?>", signature.message)
        for ref in asserts:
            text = tree.text(ref.node)
            if any(exp and exp in text for exp in expectations):
                return ref
    if asserts:
        return asserts[-1]
    return stmts[-1]


def backward_slice(ctx: FailingTestContext,
                   adapter: JavaAdapter | None = None) -> SliceResult:
    """Iterated backward pass over the statements preceding the failure.

    A preceding statement enters the slice when it defines/assigns something
    required, or (for non-assertions) when an object it uses is required.
    Admitting a statement merges all its identifiers into the required set;
    any newly seen object identifier forces another full pass, since earlier
    side effects on that object may have been missed.
    """
    adapter = adapter or JavaAdapter()
    tree = ctx.test_class
    stmts = adapter.statements_of(tree, ctx.test_method)
    if ctx.fail_stmt.index >= len(stmts) or \
            stmts[ctx.fail_stmt.index].node is not ctx.fail_stmt.node:
        raise InvalidContext("fail_stmt does not belong to the test method")
    scope = adapter.scope(tree, ctx.test_method)

    in_slice = {ctx.fail_stmt.index}
    required = fetch_var_and_obj(ctx.fail_stmt, scope)
    req_names = set(required.names())
    pass_count = 0
    changed = True
    max_passes = len(stmts) + 1
    while changed and pass_count < max_passes:
        changed = False
        pass_count += 1
        for i in range(ctx.fail_stmt.index - 1, -1, -1):
            if i in in_slice:
                continue
            ref = stmts[i]
            if ref.kind in ("var-init", "var-assign"):
                def_names = fetch_var_and_obj(ref, scope).names()
            else:
                def_names = fetch_defined(ref, scope).names()
            use_names = fetch_used_objects(ref, scope).names()
            admitted = bool(def_names & req_names) or (
                not adapter.is_assert(ref) and bool(use_names & req_names))
            if not admitted:
                continue
            in_slice.add(i)
            all_ids = fetch_var_and_obj(ref, scope)
            new_names = all_ids.names() - req_names
            req_names |= all_ids.names()
            required = required.union(all_ids)
            if any(is_object(name, scope) for name in new_names):
                changed = True
    ordered = [stmts[i] for i in sorted(in_slice)]
    return SliceResult(ordered, required, pass_count)


def reconstruct_min_test(ctx: FailingTestContext, result: SliceResult) -> str:
    """Original method text with non-slice statements spliced out."""
    tree = ctx.test_class
    method = ctx.test_method
    keep = {ref.node for ref in result.slice}
    body = method.f["body"]
    text = tree.source_text
    removals = []
    for stmt in body.children:
        if stmt in keep:
            continue
        start, end = stmt.start, stmt.end
        line_start = text.rfind("\n", 0, start) + 1
        if text[line_start:start].strip() == "":
            start = line_start
        newline = text.find("\n", end)
        if newline >= 0 and text[end:newline].strip() == "":
            end = newline + 1
        removals.append((start, end))
    out = []
    cursor = method.start
    for start, end in sorted(removals):
        out.append(text[cursor:start])
        cursor = max(cursor, end)
    out.append(text[cursor:method.end])
    return "".join(out)


def resolve_dependencies(min_test: str, test_class: SyntaxTree,
                         adapter: JavaAdapter | None = None,
                         class_decl: Node | None = None,
                         method_name: str | None = None,
                         slice_result: SliceResult | None = None,
                         original_stmt_count: int = 0) -> PurifiedTest:
    """Close the minimized test over class-local helpers and fields."""
    adapter = adapter or JavaAdapter()
    min_tree = adapter.parse_member(min_test)
    min_method = min_tree.root.children[0]
    if class_decl is None:
        from .java import find_class
        class_decl = find_class(test_class)

    class_sigs = fetch_method_sigs(class_decl)
    dep_sigs = fetch_callee_signatures(min_method) & class_sigs
    new_sigs = set(dep_sigs)
    while new_sigs:
        defs = []
        for name, arity in new_sigs:
            defs.extend(find_methods(class_decl, name, arity))
        new_sigs = (fetch_callee_signatures(defs) & class_sigs) - dep_sigs
        dep_sigs |= new_sigs

    helper_nodes: list[Node] = []
    for member in class_decl.f["body"].children:
        if member.kind == "method_decl" and not member.f["is_ctor"] \
                and (member.f["name"], member.f["arity"]) in dep_sigs:
            helper_nodes.append(member)

    all_ids = _method_identifiers(min_tree, min_method, adapter)
    for helper in helper_nodes:
        all_ids |= _method_identifiers(test_class, helper, adapter,
                                       class_decl)
    declared = fetch_declared_fields(class_decl)
    dep_field_names = all_ids & set(declared)
    field_nodes: list[Node] = []
    for member in class_decl.f["body"].children:
        if member.kind == "field_decl" and member in \
                {declared[name] for name in dep_field_names}:
            field_nodes.append(member)

    helper_texts = [test_class.text(n) for n in helper_nodes]
    field_texts = [test_class.text(n) for n in field_nodes]
    min_name = method_name or min_method.f["name"]
    assembled, purified_name = _assemble_class(
        test_class, class_decl, min_test, helper_nodes, field_nodes)
    return PurifiedTest(
        minimized_method=min_test,
        helper_methods=helper_texts,
        field_declarations=field_texts,
        assembled_class=assembled,
        class_name=purified_name,
        method_name=min_name,
        slice_result=slice_result,
        original_stmt_count=original_stmt_count,
    )


def _method_identifiers(tree: SyntaxTree, method: Node, adapter: JavaAdapter,
                        class_decl: Node | None = None) -> set[str]:
    scope = Scope(tree, method, class_decl)
    body = method.f.get("body")
    if body is None:
        return set()
    names: set[str] = set()
    for stmt in body.children:
        names |= fetch_var_and_obj(stmt, scope).names()
    return names


def _assemble_class(tree: SyntaxTree, class_decl: Node, min_test: str,
                    helper_nodes: list[Node], field_nodes: list[Node]
                    ) -> tuple[str, str]:
    text = tree.source_text
    original_name = class_decl.f["name"]
    purified_name = f"{original_name}_purified"

    preamble_parts = []
    package = tree.root.f.get("package")
    if package is not None:
        preamble_parts.append(tree.text(package))
    for imp in tree.root.f.get("imports") or []:
        preamble_parts.append(tree.text(imp))
    preamble = "\n".join(preamble_parts)

    name_start, name_end = class_decl.f["name_span"]
    header = (text[class_decl.start:name_start] + purified_name
              + text[name_end:class_decl.f["body"].start]).rstrip()

    members: list[str] = [tree.text(n) for n in field_nodes]
    for member in class_decl.f["body"].children:
        if member.kind == "initializer_block":
            members.append(tree.text(member))
        elif member.kind == "method_decl" and member.f["is_ctor"] \
                and member.f["arity"] == 0:
            ctor_text = tree.text(member)
            c_start, c_end = member.f["name_span"]
            rel_s, rel_e = c_start - member.start, c_end - member.start
            members.append(ctor_text[:rel_s] + purified_name + ctor_text[rel_e:])
        elif member.kind == "method_decl" and _is_lifecycle(member):
            members.append(tree.text(member))
    members.append(min_test.strip())
    members.extend(tree.text(n) for n in helper_nodes)

    body = "\n\n".join(_indent(m) for m in members)
    parts = [p for p in (preamble, f"{header} {{\n{body}\n}}\n") if p]
    return "\n\n".join(parts), purified_name


def _is_lifecycle(method: Node) -> bool:
    annos = {a.f["name"].rsplit(".", 1)[-1] for a in method.f["annotations"]}
    if annos & LIFECYCLE_ANNOTATIONS:
        return True
    return method.f["name"] in LIFECYCLE_NAMES and method.f["arity"] == 0


def _indent(member_text: str, pad: str = "    ") -> str:
    lines = member_text.strip().splitlines()
    tails = [len(ln) - len(ln.lstrip()) for ln in lines[1:] if ln.strip()]
    strip = min(tails) if tails else 0
    out = [pad + lines[0]]
    for line in lines[1:]:
        out.append(pad + line[strip:] if line.strip() else line)
    return "\n".join(out)


def purify(tree: SyntaxTree, class_name: str, method_name: str,
           signature: FailureSignature,
           adapter: JavaAdapter | None = None) -> tuple[FailingTestContext, PurifiedTest]:
    """Full pipeline: context, slice, reconstruct, resolve, assemble."""
    adapter = adapter or JavaAdapter()
    ctx = build_context(tree, class_name, method_name, signature, adapter)
    stmts = adapter.statements_of(tree, ctx.test_method)
    result = backward_slice(ctx, adapter)
    min_test = reconstruct_min_test(ctx, result)
    pt = resolve_dependencies(
        min_test, tree, adapter, ctx.class_decl, method_name,
        slice_result=result, original_stmt_count=len(stmts))
    return ctx, pt


def validate_purified(pt: PurifiedTest, ctx: FailingTestContext,
                      project, harness) -> ValidationVerdict:
    """Compile and re-run the assembled class; compare failure signatures.

    On a Divergent verdict callers fall back to the original test: the
    purification step is an optimization, not a correctness requirement.
    """
    file_name = f"{pt.class_name}.java"
    harness.write_workspace_file(project, file_name, pt.assembled_class)
    outcome = harness.compile_project(project)
    if outcome.kind != "compile_ok":
        return ValidationVerdict("divergent", "compile")
    outcome = harness.run_test(project, pt.test_id)
    if outcome.kind != "test_fail" or outcome.failure_signature is None:
        return ValidationVerdict("divergent", f"outcome={outcome.kind}")
    if outcome.failure_signature.kind_matches(ctx.failure_signature):
        return ValidationVerdict("confirmed")
    return ValidationVerdict(
        "divergent",
        f"signature {outcome.failure_signature.brief()} != "
        f"{ctx.failure_signature.brief()}")


def write_slice_report(path, pt: PurifiedTest, verdict: str | None) -> None:
    with open(path, "w") as fh:
        json.dump(pt.slice_report(verdict), fh, indent=2)
        fh.write("\n")
