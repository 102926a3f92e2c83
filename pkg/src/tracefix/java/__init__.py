"""Subject-language adapter for Java.

The adapter hides grammar specifics behind a small query surface; other
subject languages would plug in by providing the same surface. Exactly one
adapter (Java) ships.
"""

from __future__ import annotations

from . import queries
from .parser import parse_member, parse_source
from .queries import (
    AssertionConfig,
    DEFAULT_ASSERTIONS,
    IdentifierSet,
    Scope,
    StatementRef,
    classify_statement,
    enclosing_class,
    enclosing_method,
    fetch_callee_signatures,
    fetch_declared_fields,
    fetch_defined,
    fetch_method_sigs,
    fetch_used_objects,
    fetch_var_and_obj,
    find_class,
    find_method,
    find_methods,
    is_assert,
    is_object,
    methods_of,
    statements_of,
)
from .tree import Node, SyntaxTree
from ..errors import UnsupportedLanguage


class JavaAdapter:
    """Parses Java and answers the statement/identifier queries."""

    language = "java"
    file_suffix = ".java"
    print_sinks = ("System.out.println", "System.out.print", "System.err.println")

    def __init__(self, assertions: AssertionConfig = DEFAULT_ASSERTIONS):
        self.assertions = assertions

    def parse_source(self, text: str) -> SyntaxTree:
        return parse_source(text, "java")

    def parse_member(self, text: str) -> SyntaxTree:
        return parse_member(text)

    def statements_of(self, tree: SyntaxTree, method: Node) -> list[StatementRef]:
        return statements_of(tree, method, self.assertions)

    def scope(self, tree: SyntaxTree, method: Node | None = None,
              class_decl: Node | None = None) -> Scope:
        return Scope(tree, method, class_decl)

    def is_assert(self, stmt) -> bool:
        return is_assert(stmt, self.assertions)


_ADAPTERS = {"java": JavaAdapter}


def get_adapter(language: str) -> JavaAdapter:
    try:
        return _ADAPTERS[language]()
    except KeyError:
        raise UnsupportedLanguage(f"no adapter for language {language!r}") from None


__all__ = [
    "JavaAdapter", "get_adapter", "parse_source", "parse_member",
    "SyntaxTree", "Node", "Scope", "StatementRef", "IdentifierSet",
    "AssertionConfig", "DEFAULT_ASSERTIONS", "statements_of",
    "classify_statement", "is_assert", "is_object", "fetch_var_and_obj",
    "fetch_defined", "fetch_used_objects", "fetch_callee_signatures",
    "fetch_method_sigs", "fetch_declared_fields", "find_class", "find_method",
    "find_methods", "methods_of", "enclosing_class", "enclosing_method",
    "queries",
]
