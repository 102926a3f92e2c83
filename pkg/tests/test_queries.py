"""Identifier/statement queries against hand-derived oracles."""

import pytest

from corpus import SLICING_CASES
from tracefix.errors import EmptyBody
from tracefix.java import (
    JavaAdapter, Scope, fetch_callee_signatures, fetch_declared_fields,
    fetch_defined, fetch_method_sigs, fetch_used_objects, fetch_var_and_obj,
    find_method, is_assert, is_object, parse_source, statements_of,
)
from tracefix.java.queries import STATEMENT_KINDS


def _method(body: str, extra_members: str = "", fields: str = ""):
    source = (
        "import java.util.List;\nimport java.util.ArrayList;\n"
        "import static org.junit.Assert.*;\n"
        f"class T {{\n{fields}\n    void m() {{\n{body}\n    }}\n"
        f"{extra_members}\n}}\n")
    tree = parse_source(source)
    method = find_method(tree, "T", "m")
    return tree, method, Scope(tree, method)


def _stmt(body: str, **kw):
    tree, method, scope = _method(body, **kw)
    refs = statements_of(tree, method)
    return tree, refs, scope


class TestFetchVarAndObj:
    def test_alias_declaration(self):
        # hand-derived: listB is introduced, listA only read
        _, refs, scope = _stmt(
            "        List<String> listA = new ArrayList<String>();\n"
            "        List<String> listB = listA;")
        ids = fetch_var_and_obj(refs[1], scope)
        assert ids.entries == {("listB", "defined"), ("listA", "used")}

    def test_bare_return_is_empty(self):
        _, refs, scope = _stmt("        return;")
        assert fetch_var_and_obj(refs[0], scope).entries == set()

    def test_call_receiver_tagging(self):
        # hand token-walk: listA appears once as receiver of size()
        _, refs, scope = _stmt(
            "        List<String> listA = new ArrayList<String>();\n"
            "        assertEquals(1, listA.size());")
        ids = fetch_var_and_obj(refs[1], scope)
        assert ids.entries == {("listA", "used"), ("listA", "receiver")}

    def test_type_and_method_names_excluded(self):
        _, refs, scope = _stmt(
            "        double r = Math.sqrt(4.0);")
        ids = fetch_var_and_obj(refs[0], scope)
        assert ids.names() == {"r"}

    def test_compound_assignment_defines_and_uses(self):
        _, refs, scope = _stmt("        int a = 0;\n        a += 2;")
        ids = fetch_var_and_obj(refs[1], scope)
        assert ("a", "defined") in ids.entries
        assert ("a", "used") in ids.entries

    def test_array_store_defines_base(self):
        _, refs, scope = _stmt(
            "        int[] xs = new int[3];\n        xs[1] = 5;")
        ids = fetch_var_and_obj(refs[1], scope)
        assert ("xs", "defined") in ids.entries

    def test_superset_invariant_over_corpus(self):
        adapter = JavaAdapter()
        for case in SLICING_CASES:
            for text in case.files.values():
                tree = parse_source(text)
                for cls in tree.root.f["types"]:
                    for member in cls.f["body"].children:
                        if member.kind != "method_decl" \
                                or member.f["body"] is None:
                            continue
                        scope = Scope(tree, member)
                        for ref in statements_of(tree, member):
                            full = fetch_var_and_obj(ref, scope).names()
                            sub = (fetch_defined(ref, scope).names()
                                   | fetch_used_objects(ref, scope).names())
                            assert sub <= full, (case.name, tree.text(ref.node))


class TestFetchDefinedAndUsedObjects:
    def test_defined_is_targets_only(self):
        _, refs, scope = _stmt("        int y = 1;\n        int x = y + 2;")
        assert fetch_defined(refs[1], scope).names() == {"x"}

    def test_used_objects_receiver_and_args(self):
        tree, refs, scope = _stmt(
            "        Helper dataset = new Helper();\n"
            "        char r = 'r';\n"
            "        char c = 'c';\n"
            "        dataset.addValue(1.0, r, c);",
            extra_members="    static class Helper { "
                          "void addValue(double v, char a, char b) {} }")
        ids = fetch_used_objects(refs[3], scope)
        assert ids.names() == {"dataset"}  # r, c are primitive chars

    def test_object_argument_included(self):
        _, refs, scope = _stmt(
            "        List<String> xs = new ArrayList<String>();\n"
            "        register(xs);",
            extra_members="    void register(List<String> xs) {}")
        assert "xs" in fetch_used_objects(refs[1], scope).names()

    def test_no_calls_no_used_objects(self):
        _, refs, scope = _stmt(
            "        List<String> a = new ArrayList<String>();\n"
            "        List<String> b = a;")
        assert fetch_used_objects(refs[1], scope).names() == set()


class TestIsAssertAndIsObject:
    def test_assert_names(self):
        _, refs, _ = _stmt(
            "        assertEquals(1, 1);\n"
            "        fail();\n"
            "        verifyState();\n"
            "        Assert.assertTrue(true);\n"
            "        doWork();",
            extra_members="    void verifyState() {}\n    void doWork() {}")
        assert [is_assert(r) for r in refs] == [True, True, True, True, False]

    def test_is_object_primitive_vs_reference(self):
        _, _, scope = _stmt(
            "        int n = 1;\n"
            "        double d = 2.0;\n"
            "        List<String> xs = new ArrayList<String>();\n"
            "        String s = \"x\";")
        assert not is_object("n", scope)
        assert not is_object("d", scope)
        assert is_object("xs", scope)
        assert is_object("s", scope)

    def test_is_object_conservative_on_unknown(self):
        _, _, scope = _stmt("        int n = 1;")
        assert is_object("mystery", scope)


class TestCalleeSignatures:
    def test_no_calls(self):
        tree = parse_source("class T { void m() { int x = 1; } }")
        method = find_method(tree, "T", "m")
        assert fetch_callee_signatures(method) == set()

    def test_direct_dependency_first_pass(self):
        tree = parse_source(
            "class T { void m() { a(); } void a() { b(); } void b() {} }")
        method = find_method(tree, "T", "m")
        assert fetch_callee_signatures(method) == {("a", 0)}

    def test_overload_arity_disambiguation(self):
        tree = parse_source(
            "class T { void m() { f(1); f(1, 2); } "
            "void f(int a) {} void f(int a, int b) {} }")
        method = find_method(tree, "T", "m")
        assert fetch_callee_signatures(method) == {("f", 1), ("f", 2)}

    def test_method_sigs_and_fields(self):
        tree = parse_source(
            "class T { int counter; String name = \"x\"; "
            "void m() {} int f(int a) { return a; } }")
        cls = tree.root.f["types"][0]
        assert fetch_method_sigs(cls) == {("m", 0), ("f", 1)}
        assert set(fetch_declared_fields(cls)) == {"counter", "name"}


class TestStatementsOf:
    def test_empty_body(self):
        tree = parse_source("class T { void m() {} }")
        assert statements_of(tree, find_method(tree, "T", "m")) == []

    def test_bodyless_method_raises(self):
        tree = parse_source("abstract class T { abstract void m(); }")
        with pytest.raises(EmptyBody):
            statements_of(tree, find_method(tree, "T", "m"))

    def test_kind_totality_over_corpus(self):
        for case in SLICING_CASES:
            for text in case.files.values():
                tree = parse_source(text)
                for cls in tree.root.f["types"]:
                    for member in cls.f["body"].children:
                        if member.kind == "method_decl" \
                                and member.f["body"] is not None:
                            for ref in statements_of(tree, member):
                                assert ref.kind in STATEMENT_KINDS

    def test_kind_examples(self):
        _, refs, _ = _stmt(
            "        int a = 1;\n"
            "        a = 2;\n"
            "        doWork();\n"
            "        if (a > 0) { a = 3; }\n"
            "        while (a > 0) { a--; }\n"
            "        for (int i = 0; i < 2; i++) { a += i; }\n"
            "        for (int x : new int[]{1}) { a += x; }\n"
            "        assertEquals(1, a);\n"
            "        return;",
            extra_members="    void doWork() {}")
        kinds = [r.kind for r in refs]
        assert kinds == ["var-init", "var-assign", "expression-call", "if",
                         "while", "for", "enhanced-for", "assert",
                         "return-empty"]
