"""Syntax tree structures produced by the Java parser.

Nodes carry character spans into the original source; serializing a tree
reassembles the token stream and therefore reproduces the input exactly.
Trees are immutable after parsing and safe to share between threads.
"""

from __future__ import annotations

import bisect
from typing import Any, Iterator

from .lexer import Token


class Node:
    """One syntax node: a kind, a source span, children, and named fields."""

    __slots__ = ("kind", "start", "end", "children", "f", "parent")

    def __init__(self, kind: str, start: int, end: int,
                 children: list["Node"] | None = None, **fields: Any):
        self.kind = kind
        self.start = start
        self.end = end
        self.children: list[Node] = children or []
        self.f: dict[str, Any] = fields
        self.parent: Node | None = None

    def __repr__(self) -> str:
        return f"Node({self.kind}, {self.start}..{self.end})"

    def walk(self) -> Iterator["Node"]:
        """Depth-first pre-order traversal of this subtree."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def field_nodes(self) -> Iterator["Node"]:
        for value in self.f.values():
            if isinstance(value, Node):
                yield value
            elif isinstance(value, list):
                for item in value:
                    if isinstance(item, Node):
                        yield item


class SyntaxTree:
    """A parsed compilation unit (or single member) plus its token stream."""

    def __init__(self, source_text: str, root: Node, tokens: list[Token],
                 errors: list[str]):
        self.source_text = source_text
        self.root = root
        self.tokens = tokens
        self.errors = errors
        self._line_starts = _line_starts(source_text)
        _wire_parents(root)

    def text(self, node: Node) -> str:
        return self.source_text[node.start:node.end]

    def serialize(self) -> str:
        """Reassemble the full token stream; equals the input byte-for-byte."""
        return "".join(tok.text for tok in self.tokens)

    def line_of(self, offset: int) -> int:
        """1-based line number containing ``offset``."""
        return bisect.bisect_right(self._line_starts, offset)

    def line_span(self, node: Node) -> tuple[int, int]:
        return self.line_of(node.start), self.line_of(max(node.start, node.end - 1))

    def node_at_line(self, nodes: list[Node], line: int) -> Node | None:
        """First node from ``nodes`` whose line span covers ``line``."""
        for node in nodes:
            lo, hi = self.line_span(node)
            if lo <= line <= hi:
                return node
        return None

    def significant_tokens(self, start: int = 0, end: int | None = None) -> list[Token]:
        """Non-trivia tokens overlapping [start, end)."""
        end = len(self.source_text) if end is None else end
        return [t for t in self.tokens
                if not t.is_trivia() and t.kind != "eof"
                and t.start >= start and t.end <= end]


def _wire_parents(root: Node) -> None:
    stack = [root]
    while stack:
        node = stack.pop()
        for child in node.children:
            child.parent = node
            stack.append(child)


def _line_starts(text: str) -> list[int]:
    starts = [0]
    pos = text.find("\n")
    while pos >= 0:
        starts.append(pos + 1)
        pos = text.find("\n", pos + 1)
    return starts
