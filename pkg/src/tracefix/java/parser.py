"""Recursive-descent parser for the Java subset the pipeline manipulates.

Covers class/interface/enum declarations, fields, methods, constructors, the
full statement grammar (including try/catch, switch, do-while, enhanced for,
labeled statements) and precedence-climbing expressions with generics,
lambdas, casts, and method references. Unparseable regions become ``error``
nodes spanning the skipped tokens; the tree stays lossless either way.
"""

from __future__ import annotations

from . import lexer as lx
from .lexer import Token
from .tree import Node, SyntaxTree
from ..errors import ParseFailure

_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
_BINARY_LEVELS = [
    {"||"}, {"&&"}, {"|"}, {"^"}, {"&"}, {"==", "!="},
    {"<", ">", "<=", ">=", "instanceof"},
    {"<<", ">>", ">>>"}, {"+", "-"}, {"*", "/", "%"},
]
_LITERAL_WORDS = {"true", "false", "null"}


class _Backtrack(Exception):
    pass


def parse_source(text: str, language: str = "java") -> SyntaxTree:
    """Parse a compilation unit. Raises ParseFailure when nothing parses."""
    from ..errors import UnsupportedLanguage

    if language != "java":
        raise UnsupportedLanguage(f"no adapter for language {language!r}")
    if not text:
        raise ParseFailure("empty input")
    tokens = tokenize_checked(text)
    parser = _Parser(text, tokens)
    root = parser.compilation_unit()
    tree = SyntaxTree(text, root, tokens, parser.errors)
    if parser.errors and not _has_real_content(root):
        raise ParseFailure("; ".join(parser.errors[:3]))
    return tree


def parse_member(text: str) -> SyntaxTree:
    """Parse a single class member (typically one method declaration)."""
    if not text.strip():
        raise ParseFailure("empty input")
    tokens = tokenize_checked(text)
    parser = _Parser(text, tokens)
    try:
        member = parser.member(class_name=None)
    except _Backtrack as exc:
        raise ParseFailure(str(exc)) from None
    root = Node("member_unit", 0, len(text), [member])
    tree = SyntaxTree(text, root, tokens, parser.errors)
    if member.kind == "error":
        raise ParseFailure("; ".join(parser.errors[:3]) or "not a member")
    return tree


def tokenize_checked(text: str) -> list[Token]:
    return lx.tokenize(text)


def _has_real_content(root: Node) -> bool:
    return any(n.kind not in ("error", "empty_stmt", "compilation_unit",
                              "member_unit")
               for n in root.walk())


class _Parser:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.toks = [t for t in tokens if not t.is_trivia()]
        self.pos = 0
        self.errors: list[str] = []
        for t in tokens:
            if t.kind == lx.ERROR:
                self.errors.append(f"lex error at offset {t.start}: {t.text[:20]!r}")

    # ---- token helpers -------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        i = min(self.pos + ahead, len(self.toks) - 1)
        return self.toks[i]

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def at_kind(self, kind: str) -> bool:
        return self.peek().kind == kind

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != lx.EOF:
            self.pos += 1
        return tok

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if self.at(text):
            return self.advance()
        raise _Backtrack(f"expected {text!r} at offset {self.peek().start}")

    def split_close_angle(self) -> None:
        """Consume one '>' even when the lexer fused it into '>>' or '>>>'."""
        tok = self.peek()
        if tok.text == ">":
            self.advance()
            return
        if tok.text.startswith(">") and tok.kind == lx.OP:
            rest = Token(lx.OP, tok.text[1:], tok.start + 1, tok.end, tok.line)
            self.toks[self.pos] = rest
            return
        raise _Backtrack(f"expected '>' at offset {tok.start}")

    def speculate(self, fn, *args):
        saved_pos, saved_toks = self.pos, list(self.toks)
        try:
            return fn(*args)
        except _Backtrack:
            self.pos, self.toks = saved_pos, saved_toks
            return None

    # ---- compilation unit ----------------------------------------------

    def compilation_unit(self) -> Node:
        children: list[Node] = []
        package = None
        imports: list[Node] = []
        types: list[Node] = []
        while not self.at_kind(lx.EOF):
            start = self.peek().start
            if self.at("package"):
                self.advance()
                name = self.qualified_name_text()
                end = self._consume_semi(start)
                package = Node("package_decl", start, end, name=name)
                children.append(package)
            elif self.at("import"):
                self.advance()
                is_static = bool(self.accept("static"))
                name = self.qualified_name_text()
                wildcard = False
                if self.accept("."):
                    self.expect("*")
                    wildcard = True
                end = self._consume_semi(start)
                node = Node("import_decl", start, end, name=name,
                            static=is_static, wildcard=wildcard)
                imports.append(node)
                children.append(node)
            elif self.accept(";"):
                children.append(Node("empty_stmt", start, start + 1))
            else:
                member = self.speculate(self.type_declaration)
                if member is None:
                    member = self._error_node("top-level declaration")
                if member.kind in ("class_decl", "interface_decl", "enum_decl"):
                    types.append(member)
                children.append(member)
        end = len(self.text)
        return Node("compilation_unit", 0, end, children,
                    package=package, imports=imports, types=types)

    def qualified_name_text(self) -> str:
        parts = [self.expect_ident().text]
        while self.at(".") and self.peek(1).kind in (lx.IDENT, lx.KEYWORD):
            nxt = self.peek(1)
            if nxt.text == "*":
                break
            if nxt.kind == lx.KEYWORD and nxt.text not in ():
                break
            self.advance()
            parts.append(self.expect_ident().text)
        return ".".join(parts)

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok.kind == lx.IDENT:
            return self.advance()
        raise _Backtrack(f"expected identifier at offset {tok.start}")

    def _consume_semi(self, start: int) -> int:
        if self.accept(";"):
            return self.toks[self.pos - 1].end
        self.errors.append(f"missing ';' near offset {start}")
        return self.peek().start

    # ---- declarations ---------------------------------------------------

    def modifiers_and_annotations(self) -> tuple[list[str], list[Node], int | None]:
        mods: list[str] = []
        annos: list[Node] = []
        first: int | None = None
        while True:
            tok = self.peek()
            if tok.text == "@" and self.peek(1).text != "interface":
                first = tok.start if first is None else first
                annos.append(self.annotation())
            elif tok.text in lx.MODIFIER_WORDS:
                first = tok.start if first is None else first
                mods.append(self.advance().text)
            else:
                return mods, annos, first

    def annotation(self) -> Node:
        start = self.expect("@").start
        name = self.qualified_name_text()
        end = self.toks[self.pos - 1].end
        if self.at("("):
            end = self._skip_balanced("(", ")")
        return Node("annotation", start, end, name=name)

    def _skip_balanced(self, open_tok: str, close_tok: str) -> int:
        depth = 0
        self.expect(open_tok)
        depth = 1
        while depth and not self.at_kind(lx.EOF):
            tok = self.advance()
            if tok.text == open_tok:
                depth += 1
            elif tok.text == close_tok:
                depth -= 1
        return self.toks[self.pos - 1].end

    def type_declaration(self) -> Node:
        mods, annos, first = self.modifiers_and_annotations()
        tok = self.peek()
        if tok.text not in ("class", "interface", "enum"):
            raise _Backtrack("not a type declaration")
        start = first if first is not None else tok.start
        return self._type_decl_rest(start, mods, annos)

    def _type_decl_rest(self, start: int, mods: list[str],
                        annos: list[Node]) -> Node:
        kind_word = self.advance().text
        name_tok = self.expect_ident()
        type_params_end = None
        if self.at("<"):
            type_params_end = self._skip_type_params()
        extends = None
        implements: list[Node] = []
        if self.accept("extends"):
            extends = self.type_ref()
            while kind_word == "interface" and self.accept(","):
                implements.append(self.type_ref())
        if self.accept("implements"):
            implements.append(self.type_ref())
            while self.accept(","):
                implements.append(self.type_ref())
        body = self.class_body(name_tok.text, enum=kind_word == "enum")
        node_kind = {"class": "class_decl", "interface": "interface_decl",
                     "enum": "enum_decl"}[kind_word]
        return Node(node_kind, start, body.end, [body],
                    name=name_tok.text, name_span=(name_tok.start, name_tok.end),
                    modifiers=mods, annotations=annos, extends=extends,
                    implements=implements, body=body,
                    type_params_end=type_params_end)

    def _skip_type_params(self) -> int:
        depth = 0
        self.expect("<")
        depth = 1
        while depth and not self.at_kind(lx.EOF):
            tok = self.peek()
            if tok.text == "<":
                self.advance()
                depth += 1
            elif tok.text.startswith(">"):
                self.split_close_angle()
                depth -= 1
            else:
                self.advance()
        return self.peek(-1).end if self.pos else 0

    def class_body(self, class_name: str | None, enum: bool = False) -> Node:
        start = self.expect("{").start
        members: list[Node] = []
        if enum:
            members.extend(self._enum_constants())
        while not self.at("}") and not self.at_kind(lx.EOF):
            if self.accept(";"):
                continue
            member = self.speculate(self.member, class_name)
            if member is None:
                member = self._error_node("class member", stop_at_close=True)
            members.append(member)
        end_tok = self.accept("}")
        end = end_tok.end if end_tok else self.peek().start
        if end_tok is None:
            self.errors.append("missing '}' in class body")
        return Node("class_body", start, end, members)

    def _enum_constants(self) -> list[Node]:
        constants: list[Node] = []
        while self.at_kind(lx.IDENT):
            tok = self.advance()
            end = tok.end
            if self.at("("):
                end = self._skip_balanced("(", ")")
            constants.append(Node("enum_constant", tok.start, end, name=tok.text))
            if not self.accept(","):
                break
        self.accept(";")
        return constants

    def member(self, class_name: str | None) -> Node:
        mods, annos, first = self.modifiers_and_annotations()
        tok = self.peek()
        start = first if first is not None else tok.start

        if tok.text in ("class", "interface", "enum"):
            return self._type_decl_rest(start, mods, annos)
        if tok.text == "{":
            body = self.block()
            return Node("initializer_block", start, body.end, [body],
                        modifiers=mods, static="static" in mods, body=body)
        if tok.text == "<":
            self._skip_type_params()
            tok = self.peek()

        # Constructor: Name(...)
        if (tok.kind == lx.IDENT and self.peek(1).text == "("
                and (class_name is None or tok.text == class_name)
                and tok.text[:1].isupper()):
            ctor_probe = self.speculate(self._method_rest, start, mods, annos,
                                        None, tok, True)
            if ctor_probe is not None:
                return ctor_probe

        ret_type = self.type_ref(allow_void=True)
        name_tok = self.expect_ident()
        if self.at("("):
            return self._method_rest(start, mods, annos, ret_type, name_tok, False)
        return self._field_rest(start, mods, annos, ret_type, name_tok)

    def _method_rest(self, start: int, mods: list[str], annos: list[Node],
                     ret_type: Node | None, name_tok: Token, is_ctor: bool) -> Node:
        if is_ctor:
            self.expect_ident()
        params = self.param_list()
        while self.at("["):
            self._skip_balanced("[", "]")
        throws: list[Node] = []
        if self.accept("throws"):
            throws.append(self.type_ref())
            while self.accept(","):
                throws.append(self.type_ref())
        body = None
        if self.at("{"):
            body = self.block()
            end = body.end
        else:
            end = self._expect_semi_end()
        children = [body] if body else []
        return Node("method_decl", start, end, children,
                    name=name_tok.text, name_span=(name_tok.start, name_tok.end),
                    return_type=ret_type, params=params, throws=throws,
                    body=body, modifiers=mods, annotations=annos,
                    is_ctor=is_ctor, static="static" in mods,
                    arity=len(params))

    def _expect_semi_end(self) -> int:
        if self.accept(";"):
            return self.toks[self.pos - 1].end
        raise _Backtrack("expected method body or ';'")

    def param_list(self) -> list[Node]:
        self.expect("(")
        params: list[Node] = []
        while not self.at(")") and not self.at_kind(lx.EOF):
            p_start = self.peek().start
            while self.at("final") or self.at("@"):
                if self.at("@"):
                    self.annotation()
                else:
                    self.advance()
            ptype = self.type_ref()
            varargs = bool(self.accept("..."))
            name_tok = self.expect_ident()
            dims = 0
            while self.at("["):
                self._skip_balanced("[", "]")
                dims += 1
            params.append(Node("param", p_start, name_tok.end,
                               type=ptype, name=name_tok.text, varargs=varargs,
                               dims=dims))
            if not self.accept(","):
                break
        self.expect(")")
        return params

    def _field_rest(self, start: int, mods: list[str], annos: list[Node],
                    ftype: Node, first_name: Token) -> Node:
        declarators = [self._var_declarator(first_name)]
        while self.accept(","):
            declarators.append(self._var_declarator(self.expect_ident()))
        end = self._expect_field_semi()
        return Node("field_decl", start, end,
                    [d for d in declarators],
                    type=ftype, declarators=declarators, modifiers=mods,
                    annotations=annos, static="static" in mods,
                    names=[d.f["name"] for d in declarators])

    def _expect_field_semi(self) -> int:
        if self.accept(";"):
            return self.toks[self.pos - 1].end
        raise _Backtrack("expected ';' after field")

    def _var_declarator(self, name_tok: Token) -> Node:
        dims = 0
        while self.at("["):
            self._skip_balanced("[", "]")
            dims += 1
        init = None
        end = name_tok.end if not dims else self.toks[self.pos - 1].end
        if self.accept("="):
            init = self.array_initializer() if self.at("{") else self.expression()
            end = init.end
        children = [init] if init else []
        return Node("var_declarator", name_tok.start, end, children,
                    name=name_tok.text, name_span=(name_tok.start, name_tok.end),
                    init=init, dims=dims)

    # ---- types ------------------------------------------------------------

    def type_ref(self, allow_void: bool = False) -> Node:
        tok = self.peek()
        start = tok.start
        if tok.text == "void":
            if not allow_void:
                raise _Backtrack("void not allowed here")
            self.advance()
            return Node("type", start, tok.end, base="void", args=[], dims=0,
                        primitive=True)
        if tok.text in lx.PRIMITIVE_TYPES:
            self.advance()
            dims = self._type_dims()
            end = self.toks[self.pos - 1].end
            return Node("type", start, end, base=tok.text, args=[], dims=dims,
                        primitive=True)
        parts = [self.expect_ident().text]
        args: list[Node] = []
        if self.at("<"):
            args = self.type_args()
        while self.at(".") and self.peek(1).kind == lx.IDENT:
            self.advance()
            parts.append(self.expect_ident().text)
            if self.at("<"):
                args = self.type_args()
        dims = self._type_dims()
        end = self.toks[self.pos - 1].end
        return Node("type", start, end, base=".".join(parts), args=args,
                    dims=dims, primitive=False)

    def _type_dims(self) -> int:
        dims = 0
        while self.at("[") and self.peek(1).text == "]":
            self.advance()
            self.advance()
            dims += 1
        return dims

    def type_args(self) -> list[Node]:
        self.expect("<")
        args: list[Node] = []
        if self.peek().text.startswith(">"):
            self.split_close_angle()
            return args
        while True:
            if self.at("?"):
                q = self.advance()
                bound = None
                if self.at("extends") or self.at("super"):
                    self.advance()
                    bound = self.type_ref()
                end = bound.end if bound else q.end
                args.append(Node("wildcard_type", q.start, end, bound=bound))
            else:
                args.append(self.type_ref())
            if self.accept(","):
                continue
            self.split_close_angle()
            return args

    # ---- statements ---------------------------------------------------------

    def block(self) -> Node:
        start = self.expect("{").start
        stmts: list[Node] = []
        while not self.at("}") and not self.at_kind(lx.EOF):
            stmts.append(self.statement())
        end_tok = self.accept("}")
        end = end_tok.end if end_tok else self.peek().start
        if end_tok is None:
            self.errors.append("missing '}' in block")
        return Node("block", start, end, stmts)

    def statement(self) -> Node:
        tok = self.peek()
        text = tok.text
        handler = {
            "{": self.block, "if": self._if_stmt, "while": self._while_stmt,
            "do": self._do_stmt, "for": self._for_stmt,
            "return": self._return_stmt, "throw": self._throw_stmt,
            "try": self._try_stmt, "switch": self._switch_stmt,
            "break": self._break_continue, "continue": self._break_continue,
            "assert": self._assert_stmt, "synchronized": self._synchronized_stmt,
        }.get(text)
        if handler is not None:
            result = self.speculate(handler)
            return result if result is not None else self._error_node("statement")
        if text == ";":
            self.advance()
            return Node("empty_stmt", tok.start, tok.end)
        if text in ("class", "final", "abstract") and (
                text == "class" or self.peek(1).text == "class"):
            decl = self.speculate(self.type_declaration)
            if decl is not None:
                return decl
        if tok.kind == lx.IDENT and self.peek(1).text == ":":
            label = self.advance()
            self.advance()
            inner = self.statement()
            return Node("labeled_stmt", label.start, inner.end, [inner],
                        label=label.text, stmt=inner)
        decl = self.speculate(self._local_var_decl)
        if decl is not None:
            return decl
        stmt = self.speculate(self._expr_stmt)
        if stmt is not None:
            return stmt
        return self._error_node("statement")

    def _error_node(self, what: str, stop_at_close: bool = False) -> Node:
        start_tok = self.peek()
        self.errors.append(
            f"cannot parse {what} at line {start_tok.line} "
            f"(near {start_tok.text[:20]!r})")
        depth = 0
        end = start_tok.end
        while not self.at_kind(lx.EOF):
            tok = self.advance()
            end = tok.end
            if tok.text in ("{", "("):
                depth += 1
            elif tok.text in ("}", ")"):
                if depth == 0 and tok.text == "}":
                    break
                depth = max(0, depth - 1)
                if stop_at_close and depth == 0:
                    break
            elif tok.text == ";" and depth == 0:
                break
        return Node("error", start_tok.start, end)

    def _paren_expr(self) -> tuple[Node, tuple[int, int]]:
        self.expect("(")
        open_end = self.toks[self.pos - 1].end
        expr = self.expression()
        close = self.expect(")")
        return expr, (open_end, close.start)

    def _if_stmt(self) -> Node:
        start = self.expect("if").start
        cond, cond_span = self._paren_expr()
        then = self.statement()
        else_ = None
        end = then.end
        if self.accept("else"):
            else_ = self.statement()
            end = else_.end
        children = [cond, then] + ([else_] if else_ else [])
        return Node("if_stmt", start, end, children, cond=cond, then=then,
                    else_=else_, cond_span=cond_span)

    def _while_stmt(self) -> Node:
        start = self.expect("while").start
        cond, cond_span = self._paren_expr()
        body = self.statement()
        return Node("while_stmt", start, body.end, [cond, body], cond=cond,
                    body=body, cond_span=cond_span)

    def _do_stmt(self) -> Node:
        start = self.expect("do").start
        body = self.statement()
        self.expect("while")
        cond, cond_span = self._paren_expr()
        end = self._consume_semi(start)
        return Node("do_stmt", start, end, [body, cond], body=body, cond=cond,
                    cond_span=cond_span)

    def _for_stmt(self) -> Node:
        start = self.expect("for").start
        self.expect("(")
        foreach = self.speculate(self._foreach_rest, start)
        if foreach is not None:
            return foreach
        init: list[Node] = []
        if not self.at(";"):
            decl = self.speculate(self._local_var_decl_no_semi)
            if decl is not None:
                init = [decl]
            else:
                init = [self.expression()]
                while self.accept(","):
                    init.append(self.expression())
        self.expect(";")
        cond = None
        cond_span = None
        if not self.at(";"):
            cond_start = self.peek().start
            cond = self.expression()
            cond_span = (cond_start, cond.end)
        self.expect(";")
        update: list[Node] = []
        if not self.at(")"):
            update.append(self.expression())
            while self.accept(","):
                update.append(self.expression())
        self.expect(")")
        body = self.statement()
        children = init + ([cond] if cond else []) + update + [body]
        return Node("for_stmt", start, body.end, children, init=init, cond=cond,
                    update=update, body=body, cond_span=cond_span)

    def _foreach_rest(self, start: int) -> Node:
        while self.at("final") or self.at("@"):
            if self.at("@"):
                self.annotation()
            else:
                self.advance()
        var_type = self.type_ref()
        name_tok = self.expect_ident()
        self.expect(":")
        iterable = self.expression()
        self.expect(")")
        body = self.statement()
        return Node("foreach_stmt", start, body.end, [iterable, body],
                    var_type=var_type, var_name=name_tok.text,
                    var_name_span=(name_tok.start, name_tok.end),
                    iterable=iterable, body=body)

    def _return_stmt(self) -> Node:
        start = self.expect("return").start
        expr = None
        if not self.at(";"):
            expr = self.expression()
        end = self._consume_semi(start)
        return Node("return_stmt", start, end, [expr] if expr else [], expr=expr)

    def _throw_stmt(self) -> Node:
        start = self.expect("throw").start
        expr = self.expression()
        end = self._consume_semi(start)
        return Node("throw_stmt", start, end, [expr], expr=expr)

    def _try_stmt(self) -> Node:
        start = self.expect("try").start
        if self.at("("):
            self._skip_balanced("(", ")")
        body = self.block()
        catches: list[Node] = []
        finally_ = None
        end = body.end
        while self.at("catch"):
            c_start = self.advance().start
            self.expect("(")
            while self.at("final"):
                self.advance()
            ptype = self.type_ref()
            while self.accept("|"):
                self.type_ref()
            pname = self.expect_ident()
            self.expect(")")
            c_body = self.block()
            catches.append(Node("catch_clause", c_start, c_body.end, [c_body],
                                param_type=ptype, param_name=pname.text,
                                body=c_body))
            end = c_body.end
        if self.accept("finally"):
            finally_ = self.block()
            end = finally_.end
        children = [body] + catches + ([finally_] if finally_ else [])
        return Node("try_stmt", start, end, children, body=body,
                    catches=catches, finally_=finally_)

    def _switch_stmt(self) -> Node:
        start = self.expect("switch").start
        selector, _ = self._paren_expr()
        self.expect("{")
        groups: list[Node] = []
        while not self.at("}") and not self.at_kind(lx.EOF):
            g_start = self.peek().start
            labels: list[Node | str] = []
            while self.at("case") or self.at("default"):
                if self.accept("default"):
                    labels.append("default")
                else:
                    self.advance()
                    labels.append(self.expression())
                self.expect(":")
            if not labels:
                groups.append(self._error_node("switch label", stop_at_close=True))
                continue
            stmts: list[Node] = []
            while not self.at("case") and not self.at("default") \
                    and not self.at("}") and not self.at_kind(lx.EOF):
                stmts.append(self.statement())
            g_end = stmts[-1].end if stmts else g_start
            groups.append(Node("case_group", g_start, g_end, stmts,
                               labels=labels))
        end = self.expect("}").end
        return Node("switch_stmt", start, end, [selector] + groups,
                    selector=selector, groups=groups)

    def _break_continue(self) -> Node:
        tok = self.advance()
        label = None
        if self.at_kind(lx.IDENT):
            label = self.advance().text
        end = self._consume_semi(tok.start)
        kind = "break_stmt" if tok.text == "break" else "continue_stmt"
        return Node(kind, tok.start, end, label=label)

    def _assert_stmt(self) -> Node:
        start = self.expect("assert").start
        cond = self.expression()
        msg = None
        if self.accept(":"):
            msg = self.expression()
        end = self._consume_semi(start)
        children = [cond] + ([msg] if msg else [])
        return Node("assert_stmt", start, end, children, cond=cond, msg=msg)

    def _synchronized_stmt(self) -> Node:
        start = self.expect("synchronized").start
        lock, _ = self._paren_expr()
        body = self.block()
        return Node("synchronized_stmt", start, body.end, [lock, body],
                    lock=lock, body=body)

    def _local_var_decl(self) -> Node:
        node = self._local_var_decl_no_semi()
        end = self._expect_field_semi()
        node.end = end
        return node

    def _local_var_decl_no_semi(self) -> Node:
        start = self.peek().start
        while self.at("final") or self.at("@"):
            if self.at("@"):
                self.annotation()
            else:
                self.advance()
        vtype = self.type_ref()
        name_tok = self.expect_ident()
        nxt = self.peek().text
        if nxt not in ("=", ";", ",", "[", ":"):
            raise _Backtrack("not a local variable declaration")
        if nxt == ":":
            raise _Backtrack("looks like foreach")
        declarators = [self._var_declarator(name_tok)]
        while self.accept(","):
            declarators.append(self._var_declarator(self.expect_ident()))
        end = declarators[-1].end
        return Node("local_var_decl", start, end, list(declarators),
                    type=vtype, declarators=declarators,
                    names=[d.f["name"] for d in declarators])

    def _expr_stmt(self) -> Node:
        start = self.peek().start
        expr = self.expression()
        if not expr_is_statement(expr):
            raise _Backtrack("not a statement expression")
        end = self._expect_field_semi()
        return Node("expr_stmt", start, end, [expr], expr=expr)

    # ---- expressions ----------------------------------------------------------

    def expression(self) -> Node:
        return self._assignment()

    def _assignment(self) -> Node:
        left = self._ternary()
        tok = self.peek()
        if tok.text in _ASSIGN_OPS:
            self.advance()
            value = self._assignment()
            return Node("assign", left.start, value.end, [left, value],
                        target=left, op=tok.text, value=value)
        return left

    def _ternary(self) -> Node:
        cond = self._binary(0)
        if self.at("?"):
            self.advance()
            then = self.expression()
            self.expect(":")
            else_ = self._ternary()
            return Node("ternary", cond.start, else_.end, [cond, then, else_],
                        cond=cond, then=then, else_=else_)
        return cond

    def _binary(self, level: int) -> Node:
        if level >= len(_BINARY_LEVELS):
            return self._unary()
        ops = _BINARY_LEVELS[level]
        left = self._binary(level + 1)
        while True:
            tok = self.peek()
            if tok.text not in ops:
                return left
            if tok.text == ">" and self.peek(1).text in (">", ">="):
                return left  # avoid eating fused shift pieces
            if tok.text == "instanceof":
                self.advance()
                rtype = self.type_ref()
                binding_end = rtype.end
                if self.at_kind(lx.IDENT):  # pattern variable
                    binding_end = self.advance().end
                left = Node("instanceof", left.start, binding_end,
                            [left], expr=left, type=rtype)
                continue
            self.advance()
            right = self._binary(level + 1)
            left = Node("binary", left.start, right.end, [left, right],
                        op=tok.text, left=left, right=right)

    def _unary(self) -> Node:
        tok = self.peek()
        if tok.text in ("+", "-", "!", "~"):
            self.advance()
            operand = self._unary()
            return Node("unary", tok.start, operand.end, [operand],
                        op=tok.text, operand=operand)
        if tok.text in ("++", "--"):
            self.advance()
            operand = self._unary()
            return Node("update", tok.start, operand.end, [operand],
                        op=tok.text, operand=operand, prefix=True)
        if tok.text == "(":
            cast = self.speculate(self._cast)
            if cast is not None:
                return cast
        return self._postfix(self._primary())

    def _cast(self) -> Node:
        start = self.expect("(").start
        ctype = self.type_ref()
        self.expect(")")
        nxt = self.peek()
        primitive_ok = ctype.f["primitive"] or ctype.f["dims"]
        starts_operand = (
            nxt.kind in (lx.IDENT, lx.INT, lx.FLOAT, lx.STRING, lx.CHAR)
            or nxt.text in ("(", "!", "~", "this", "super", "new")
            or (primitive_ok and nxt.text in ("+", "-"))
        )
        if not starts_operand:
            raise _Backtrack("not a cast")
        if not ctype.f["primitive"] and not ctype.f["args"] and not ctype.f["dims"] \
                and nxt.text in ("+", "-"):
            raise _Backtrack("ambiguous cast")
        operand = self._unary()
        return Node("cast", start, operand.end, [operand], type=ctype,
                    operand=operand)

    def _postfix(self, expr: Node) -> Node:
        while True:
            tok = self.peek()
            if tok.text == ".":
                nxt = self.peek(1)
                if nxt.text == "class":
                    self.advance()
                    end = self.advance().end
                    expr = Node("class_literal", expr.start, end, [expr], type=expr)
                elif nxt.text == "this":
                    self.advance()
                    end = self.advance().end
                    expr = Node("field_access", expr.start, end, [expr],
                                receiver=expr, name="this",
                                name_span=(nxt.start, nxt.end))
                elif nxt.text == "new":
                    self.advance()
                    self.advance()
                    inner = self._new_expr(nxt.start)
                    expr = Node("qualified_new", expr.start, inner.end,
                                [expr, inner], receiver=expr, new=inner)
                elif nxt.kind == lx.IDENT or nxt.text == "<":
                    self.advance()
                    if self.at("<"):  # explicit generic method call
                        self._skip_type_params()
                    name_tok = self.expect_ident()
                    if self.at("("):
                        args, end = self._arguments()
                        expr = Node("call", expr.start, end, [expr] + args,
                                    receiver=expr, name=name_tok.text,
                                    name_span=(name_tok.start, name_tok.end),
                                    args=args)
                    else:
                        expr = Node("field_access", expr.start, name_tok.end,
                                    [expr], receiver=expr, name=name_tok.text,
                                    name_span=(name_tok.start, name_tok.end))
                else:
                    return expr
            elif tok.text == "[":
                self.advance()
                index = self.expression()
                end = self.expect("]").end
                expr = Node("array_access", expr.start, end, [expr, index],
                            array=expr, index=index)
            elif tok.text in ("++", "--"):
                self.advance()
                expr = Node("update", expr.start, tok.end, [expr], op=tok.text,
                            operand=expr, prefix=False)
            elif tok.text == "::":
                self.advance()
                name = self.advance()
                expr = Node("method_ref", expr.start, name.end, [expr],
                            receiver=expr, name=name.text)
            else:
                return expr

    def _arguments(self) -> tuple[list[Node], int]:
        self.expect("(")
        args: list[Node] = []
        while not self.at(")") and not self.at_kind(lx.EOF):
            args.append(self.expression())
            if not self.accept(","):
                break
        end = self.expect(")").end
        return args, end

    def _primary(self) -> Node:
        tok = self.peek()
        if tok.kind in (lx.INT, lx.FLOAT, lx.STRING, lx.CHAR):
            self.advance()
            return Node("literal", tok.start, tok.end, lit_kind=tok.kind,
                        text=tok.text)
        if tok.kind == lx.IDENT:
            if tok.text in _LITERAL_WORDS:
                self.advance()
                return Node("literal", tok.start, tok.end, lit_kind=tok.text,
                            text=tok.text)
            if self.peek(1).text == "->":
                self.advance()
                self.advance()
                body = self.block() if self.at("{") else self.expression()
                return Node("lambda", tok.start, body.end, [body],
                            params=[tok.text], body=body)
            self.advance()
            if self.at("("):
                args, end = self._arguments()
                return Node("call", tok.start, end, args, receiver=None,
                            name=tok.text, name_span=(tok.start, tok.end),
                            args=args)
            return Node("ident", tok.start, tok.end, name=tok.text)
        if tok.text == "this":
            self.advance()
            if self.at("("):
                args, end = self._arguments()
                return Node("call", tok.start, end, args, receiver=None,
                            name="this", name_span=(tok.start, tok.end), args=args)
            return Node("this_expr", tok.start, tok.end)
        if tok.text == "super":
            self.advance()
            if self.at("("):
                args, end = self._arguments()
                return Node("call", tok.start, end, args, receiver=None,
                            name="super", name_span=(tok.start, tok.end), args=args)
            return Node("super_expr", tok.start, tok.end)
        if tok.text == "new":
            self.advance()
            return self._new_expr(tok.start)
        if tok.text == "(":
            lam = self.speculate(self._paren_lambda)
            if lam is not None:
                return lam
            self.advance()
            inner = self.expression()
            end = self.expect(")").end
            return Node("paren", tok.start, end, [inner], expr=inner)
        if tok.text in lx.PRIMITIVE_TYPES or tok.text == "void":
            # e.g. int.class, double.class
            self.advance()
            if self.at(".") and self.peek(1).text == "class":
                self.advance()
                end = self.advance().end
                return Node("class_literal", tok.start, end, type=None)
            raise _Backtrack("stray primitive type")
        raise _Backtrack(f"unexpected token {tok.text!r} at offset {tok.start}")

    def _paren_lambda(self) -> Node:
        start = self.expect("(").start
        params: list[str] = []
        while not self.at(")"):
            if self.at_kind(lx.IDENT) and self.peek(1).text in (",", ")"):
                params.append(self.advance().text)
            else:
                self.type_ref()
                params.append(self.expect_ident().text)
            if not self.accept(","):
                break
        self.expect(")")
        self.expect("->")
        body = self.block() if self.at("{") else self.expression()
        return Node("lambda", start, body.end, [body], params=params, body=body)

    def _new_expr(self, start: int) -> Node:
        ntype = self.type_ref()
        if ntype.f["dims"]:
            # type_ref consumed `[]` pairs: `new int[] {...}` style
            init = None
            end = ntype.end
            if self.at("{"):
                init = self.array_initializer()
                end = init.end
            return Node("new_array", start, end, [init] if init else [],
                        type=ntype, dims_exprs=[], extra_dims=ntype.f["dims"],
                        init=init)
        if self.at("["):
            dims_exprs: list[Node] = []
            extra_dims = 0
            while self.at("["):
                self.advance()
                if self.at("]"):
                    self.advance()
                    extra_dims += 1
                else:
                    dims_exprs.append(self.expression())
                    self.expect("]")
            init = None
            end = self.toks[self.pos - 1].end
            if self.at("{"):
                init = self.array_initializer()
                end = init.end
            children = dims_exprs + ([init] if init else [])
            return Node("new_array", start, end, children, type=ntype,
                        dims_exprs=dims_exprs, extra_dims=extra_dims, init=init)
        args, end = self._arguments()
        body = None
        if self.at("{"):
            body = self.class_body(None)
            end = body.end
        children = args + ([body] if body else [])
        return Node("new_object", start, end, children, type=ntype, args=args,
                    anon_body=body)

    def array_initializer(self) -> Node:
        start = self.expect("{").start
        elems: list[Node] = []
        while not self.at("}") and not self.at_kind(lx.EOF):
            elems.append(self.array_initializer() if self.at("{")
                         else self.expression())
            if not self.accept(","):
                break
        end = self.expect("}").end
        return Node("array_init", start, end, elems)


def expr_is_statement(expr: Node) -> bool:
    """True for expressions Java allows as statements."""
    return expr.kind in ("assign", "update", "call", "new_object",
                         "qualified_new")
