"""Parser and lexer: lossless round-trips, spans, statement structure."""

import pytest
from hypothesis import given, settings, strategies as st

from corpus import DIFF_CASES, SLICING_CASES, subject_class
from tracefix.errors import ParseFailure, UnsupportedLanguage
from tracefix.java import parse_member, parse_source, statements_of, find_method
from tracefix.java.lexer import tokenize


def _all_corpus_sources():
    sources = []
    for case in SLICING_CASES:
        sources.extend(case.files.values())
    for case in DIFF_CASES:
        sources.append(subject_class(case, case.method))
    return sources


@pytest.mark.parametrize("source", _all_corpus_sources(),
                         ids=lambda s: f"{len(s)}ch")
def test_roundtrip_corpus(source):
    tree = parse_source(source)
    assert tree.serialize() == source
    assert not tree.errors


def test_roundtrip_large_class():
    methods = "\n".join(
        f"    public int m{i}(int x) {{ return x + {i}; }}"
        for i in range(500))
    source = f"public class Big {{\n{methods}\n}}\n"
    tree = parse_source(source)
    assert tree.serialize() == source
    assert not tree.errors
    cls = tree.root.f["types"][0]
    assert sum(1 for m in cls.f["body"].children
               if m.kind == "method_decl") == 500


@given(st.text(max_size=300))
@settings(max_examples=200, deadline=None)
def test_lexer_lossless_on_arbitrary_text(text):
    assert "".join(t.text for t in tokenize(text)) == text


@given(st.text(alphabet="abxy_(){};=+<>\"'/*\n 0123456789", max_size=120))
@settings(max_examples=200, deadline=None)
def test_parse_never_drops_text(text):
    try:
        tree = parse_source(text)
    except (ParseFailure, RecursionError):
        return
    assert tree.serialize() == text


def test_unsupported_language():
    with pytest.raises(UnsupportedLanguage):
        parse_source("x", language="python")


def test_empty_input_is_parse_failure():
    with pytest.raises(ParseFailure):
        parse_source("")


def test_garbage_is_parse_failure():
    with pytest.raises(ParseFailure):
        parse_source("]]]] ???? ;;;;")


def test_partially_bad_input_keeps_error_nodes():
    source = """public class X {
    void good() { int a = 1; }
    void bad() { int = ; }
    void alsoGood() { int b = 2; }
}
"""
    tree = parse_source(source)
    assert tree.serialize() == source
    assert tree.errors
    assert any(n.kind == "error" for n in tree.root.walk())
    assert find_method(tree, "X", "good") is not None
    assert find_method(tree, "X", "alsoGood") is not None


def test_single_statement_parse():
    tree = parse_source("class T { void m() { int x = 1; } }")
    method = find_method(tree, "T", "m")
    refs = statements_of(tree, method)
    assert len(refs) == 1
    assert refs[0].kind == "var-init"


def test_figure5_statement_count_and_order():
    case = next(c for c in SLICING_CASES if c.name == "fig5_alias")
    tree = parse_source(case.files["AliasTest.java"])
    method = find_method(tree, "AliasTest", "testAlias")
    refs = statements_of(tree, method)
    assert [r.index for r in refs] == [0, 1, 2, 3]
    assert refs[3].kind == "assert"
    starts = [r.node.start for r in refs]
    assert starts == sorted(starts)


def test_span_containment_invariant():
    for source in _all_corpus_sources()[:10]:
        tree = parse_source(source)
        for node in tree.root.walk():
            for child in node.children:
                assert node.start <= child.start <= child.end <= node.end


def test_parse_member_roundtrip():
    text = "public int f(int a) { return a * 2; }"
    tree = parse_member(text)
    assert tree.serialize() == text
    assert tree.root.children[0].kind == "method_decl"


def test_parse_member_rejects_garbage():
    with pytest.raises(ParseFailure):
        parse_member("not a method at all !!!")


def test_method_body_not_flattened():
    tree = parse_source(
        "class T { void m() { for (int i = 0; i < 3; i++) { use(i); } } "
        "void use(int i) {} }")
    refs = statements_of(tree, find_method(tree, "T", "m"))
    assert len(refs) == 1
    assert refs[0].kind == "for"


def test_line_spans():
    source = "class T {\n    void m() {\n        int a = 1;\n    }\n}\n"
    tree = parse_source(source)
    refs = statements_of(tree, find_method(tree, "T", "m"))
    assert tree.line_span(refs[0].node) == (3, 3)
