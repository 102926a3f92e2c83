"""Tokenizer for Java source text.

Produces a lossless token stream: concatenating the text of every token
(including whitespace and comments) reproduces the input exactly. Malformed
lexemes (unterminated strings, chars, block comments) become ERROR tokens
instead of aborting, so downstream consumers can keep going and report
diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

PRIMITIVE_TYPES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double"}
)

MODIFIER_WORDS = frozenset(
    """public protected private static final abstract native synchronized
    transient volatile strictfp default""".split()
)

# Longest-match-first operator table.
_OPERATORS = [
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "<<", ">>",
    "<=", ">=", "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=", "^=",
]
_SINGLES = set("+-*/%=<>!~&|^?:;,.(){}[]@")

# Token kinds
IDENT = "ident"
KEYWORD = "keyword"
INT = "int"
FLOAT = "float"
STRING = "string"
CHAR = "char"
OP = "op"
WS = "ws"
LINE_COMMENT = "line_comment"
BLOCK_COMMENT = "block_comment"
ERROR = "error"
EOF = "eof"

TRIVIA = frozenset({WS, LINE_COMMENT, BLOCK_COMMENT})


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    line: int  # 1-based line of the first character

    def is_trivia(self) -> bool:
        return self.kind in TRIVIA


def tokenize(text: str) -> list[Token]:
    """Lex ``text`` into a lossless token list terminated by an EOF token."""
    toks: list[Token] = []
    i, n, line = 0, len(text), 1

    def emit(kind: str, end: int) -> None:
        nonlocal i, line
        toks.append(Token(kind, text[i:end], i, end, line))
        line += text.count("\n", i, end)
        i = end

    while i < n:
        c = text[i]
        if c in " \t\r\n\f":
            j = i + 1
            while j < n and text[j] in " \t\r\n\f":
                j += 1
            emit(WS, j)
        elif c == "/" and text.startswith("//", i):
            j = text.find("\n", i)
            emit(LINE_COMMENT, n if j < 0 else j)
        elif c == "/" and text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                emit(ERROR, n)
            else:
                emit(BLOCK_COMMENT, j + 2)
        elif c == '"':
            emit(*_scan_quoted(text, i, '"', STRING))
        elif c == "'":
            emit(*_scan_quoted(text, i, "'", CHAR))
        elif c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            emit(*_scan_number(text, i))
        elif c.isalpha() or c in "_$":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "_$"):
                j += 1
            word = text[i:j]
            emit(KEYWORD if word in KEYWORDS else IDENT, j)
        else:
            for op in _OPERATORS:
                if text.startswith(op, i):
                    emit(OP, i + len(op))
                    break
            else:
                emit(OP if c in _SINGLES else ERROR, i + 1)
    toks.append(Token(EOF, "", n, n, line))
    return toks


def _scan_quoted(text: str, i: int, quote: str, kind: str) -> tuple[str, int]:
    j = i + 1
    n = len(text)
    while j < n:
        if text[j] == "\\" and j + 1 < n:
            j += 2
            continue
        if text[j] == quote:
            return kind, j + 1
        if text[j] == "\n":
            break
        j += 1
    # Unterminated literal: swallow to end of line.
    return ERROR, j if j < n else n


def _scan_number(text: str, i: int) -> tuple[str, int]:
    n = len(text)
    j = i
    kind = INT
    if text.startswith(("0x", "0X", "0b", "0B"), i):
        j = i + 2
        while j < n and (text[j].isalnum() or text[j] == "_"):
            j += 1
        return INT, j
    while j < n and (text[j].isdigit() or text[j] == "_"):
        j += 1
    if j < n and text[j] == "." and (j + 1 < n and text[j + 1].isdigit() or text[i].isdigit()):
        kind = FLOAT
        j += 1
        while j < n and (text[j].isdigit() or text[j] == "_"):
            j += 1
    if j < n and text[j] in "eE":
        k = j + 1
        if k < n and text[k] in "+-":
            k += 1
        if k < n and text[k].isdigit():
            kind = FLOAT
            j = k
            while j < n and text[j].isdigit():
                j += 1
    if j < n and text[j] in "fFdD":
        kind = FLOAT
        j += 1
    elif j < n and text[j] in "lL":
        j += 1
    return kind, j
