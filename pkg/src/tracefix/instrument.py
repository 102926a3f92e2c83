"""Print-statement instrumentation of a buggy function.

Two routes produce an instrumented variant:

* LLM-guided: predict the critical variables, ask the model to insert prints
  around them, then gate the candidate through a two-stage consistency check
  (normalized token equivalence, then a real compile of the spliced file).
* Rule-based fallback: a deterministic AST-driven rewrite that logs every
  assignment, hoists every if/loop condition into a fresh boolean temp, logs
  loop predicates with an entry-break rewrite, and hoists return expressions.

Debug marker strings are load-bearing: the trace parser keys off them
byte-for-byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    GatewayUnavailable, InstrumentationUnavailable, MalformedReply,
    ParseFailure, RuleInstrumentationFailure,
)
from .java import JavaAdapter, Scope
from .java import lexer as jlx
from .java.tree import Node, SyntaxTree

START_MARKER = "// START_DEBUG"
END_MARKER = "// END_DEBUG"
VAR_PREFIX = "// DEBUG [VAR] "
COND_PREFIX = "// DEBUG [COND] "
LOOP_PREFIX = "// DEBUG [LOOP] "
RETURN_PREFIX = "// DEBUG [RETURN] "
RETURN_VOID = "// DEBUG [RETURN] void"
SUPPRESSED_VALUE = "\u2026(suppressed)"
TRUNCATED_SUFFIX = "\u2026(truncated)"


@dataclass
class InstrumenterConfig:
    m_inst: int = 10
    loop_print_cap: int = 50
    max_render_len: int = 200
    print_sink: str = "System.out.println"
    print_sinks: tuple[str, ...] = ("System.out.println", "System.out.print",
                                    "System.err.println", "System.err.print")
    temp_prefix: str = "__dbg_"
    breakpoint_retries: int = 3


@dataclass
class BuggyFunction:
    source: str
    file_path: str
    line_range: tuple[int, int]
    enclosing_class: str
    method_name: str = ""


@dataclass
class CriticalVariables:
    names: list[str]
    rationale: dict[str, str] = field(default_factory=dict)


@dataclass
class CheckVerdict:
    line_equivalence: bool
    compilation: bool | None = None
    details: str = ""

    @property
    def accepted(self) -> bool:
        return self.line_equivalence and self.compilation is not False


@dataclass
class InstrumentedFunction:
    source: str
    mode: str  # "llm" | "rule"
    attempt_count: int
    check_report: CheckVerdict
    original: str = ""


def load_buggy_function(source: str, file_path: str, line_range,
                        enclosing_class: str,
                        adapter: JavaAdapter | None = None) -> BuggyFunction:
    adapter = adapter or JavaAdapter()
    tree = adapter.parse_member(source)
    method = tree.root.children[0]
    if method.kind != "method_decl":
        raise ParseFailure("buggy function is not a single method declaration")
    return BuggyFunction(source, file_path, tuple(line_range),
                         enclosing_class, method.f["name"])


# ---- normalization and consistency check -----------------------------------


def normalize(source: str, adapter: JavaAdapter | None = None,
              print_sinks: tuple[str, ...] | None = None) -> list[str]:
    """Token sequence of the source minus print statements and comments."""
    adapter = adapter or JavaAdapter()
    sinks = print_sinks or InstrumenterConfig().print_sinks
    tree = adapter.parse_member(source)
    drop_spans = _print_statement_spans(tree, sinks)
    tokens = []
    for tok in tree.tokens:
        if tok.is_trivia() or tok.kind == jlx.EOF:
            continue
        if any(start <= tok.start and tok.end <= end
               for start, end in drop_spans):
            continue
        tokens.append(tok.text)
    return tokens


def _print_statement_spans(tree: SyntaxTree,
                           sinks: tuple[str, ...]) -> list[tuple[int, int]]:
    spans = []
    for node in tree.root.walk():
        if node.kind == "expr_stmt" and _is_print_call(tree, node.f["expr"], sinks):
            spans.append((node.start, node.end))
        elif node.kind == "error" and _error_starts_with_sink(tree, node, sinks):
            spans.append((node.start, node.end))
    return spans


def _is_print_call(tree: SyntaxTree, expr: Node, sinks: tuple[str, ...]) -> bool:
    if expr.kind != "call" or expr.f.get("receiver") is None:
        return False
    target = _squeeze(tree.text(expr.f["receiver"])) + "." + expr.f["name"]
    return target in sinks


def _error_starts_with_sink(tree: SyntaxTree, node: Node,
                            sinks: tuple[str, ...]) -> bool:
    toks = tree.significant_tokens(node.start, node.end)
    head = "".join(t.text for t in toks[:6])
    return any(head.startswith(sink + "(") for sink in sinks)


def _squeeze(text: str) -> str:
    return re.sub(r"\s+", "", text)


def consistency_check(candidate: str, bug: BuggyFunction,
                      compile_probe=None,
                      adapter: JavaAdapter | None = None,
                      config: InstrumenterConfig | None = None) -> CheckVerdict:
    """Stage 1: normalized token equality. Stage 2: compile the splice."""
    adapter = adapter or JavaAdapter()
    config = config or InstrumenterConfig()
    try:
        cand_tokens = normalize(candidate, adapter, config.print_sinks)
        orig_tokens = normalize(bug.source, adapter, config.print_sinks)
    except ParseFailure as exc:
        return CheckVerdict(False, None, f"normalize failed: {exc}")
    if cand_tokens != orig_tokens:
        return CheckVerdict(False, None, _first_token_divergence(
            orig_tokens, cand_tokens))
    if compile_probe is None:
        return CheckVerdict(True, None, "no compile probe configured")
    ok, diagnostics = compile_probe(candidate)
    return CheckVerdict(True, bool(ok), diagnostics)


def _first_token_divergence(orig: list[str], cand: list[str]) -> str:
    for i, (a, b) in enumerate(zip(orig, cand)):
        if a != b:
            return f"token {i}: {a!r} != {b!r}"
    return f"token count {len(orig)} != {len(cand)}"


# ---- rule-based instrumentation (deterministic fallback) ---------------------


class _Edits:
    def __init__(self, text: str):
        self.text = text
        self.events: list[tuple[int, int, int, str]] = []
        self._seq = 0

    def insert(self, pos: int, text: str) -> None:
        self._seq += 1
        self.events.append((pos, pos, self._seq, text))

    def replace(self, start: int, end: int, text: str) -> None:
        self._seq += 1
        self.events.append((start, end, self._seq, text))

    def apply(self) -> str:
        out = []
        cursor = 0
        for start, end, _, text in sorted(
                self.events, key=lambda e: (e[0], e[0] != e[1], e[2])):
            if start < cursor:
                raise RuleInstrumentationFailure("overlapping edits")
            out.append(self.text[cursor:start])
            out.append(text)
            cursor = max(cursor, end)
        out.append(self.text[cursor:])
        return "".join(out)


class _NamePool:
    def __init__(self, taken: set[str], prefix: str):
        self.taken = taken
        self.prefix = prefix
        self.counts = {"t": 0, "c": 0}

    def fresh(self, kind: str) -> str:
        while True:
            name = f"{self.prefix}{kind}{self.counts[kind]}"
            self.counts[kind] += 1
            if name not in self.taken:
                self.taken.add(name)
                return name


def rule_instrument(bug: BuggyFunction,
                    adapter: JavaAdapter | None = None,
                    config: InstrumenterConfig | None = None
                    ) -> InstrumentedFunction:
    adapter = adapter or JavaAdapter()
    config = config or InstrumenterConfig()
    try:
        tree = adapter.parse_member(bug.source)
    except ParseFailure as exc:
        raise RuleInstrumentationFailure(f"buggy function unparseable: {exc}")
    if tree.errors:
        raise RuleInstrumentationFailure(
            f"buggy function has parse errors: {tree.errors[0]}")
    method = tree.root.children[0]
    body = method.f.get("body")
    if body is None:
        raise RuleInstrumentationFailure("buggy function has no body")

    writer = _RuleWriter(tree, method, config)
    writer.run()
    out = writer.edits.apply()

    try:
        check_tree = adapter.parse_member(out)
    except ParseFailure as exc:
        raise RuleInstrumentationFailure(f"instrumented output unparseable: {exc}")
    if check_tree.errors:
        raise RuleInstrumentationFailure(
            f"instrumented output has parse errors: {check_tree.errors[0]}")
    return InstrumentedFunction(out, "rule", 0,
                                CheckVerdict(False, True, "rule transform"),
                                original=bug.source)


class _RuleWriter:
    """Walks the method body emitting Algorithm-style instrumentation edits."""

    def __init__(self, tree: SyntaxTree, method: Node,
                 config: InstrumenterConfig):
        self.tree = tree
        self.method = method
        self.config = config
        self.edits = _Edits(tree.source_text)
        taken = {t.text for t in tree.tokens if t.kind == jlx.IDENT}
        self.names = _NamePool(taken, config.temp_prefix)
        self.scope = Scope(tree, method)
        self.preamble: list[str] = []
        ret = method.f.get("return_type")
        self.return_type = tree.text(ret) if ret is not None else "void"

    # -- small emit helpers -------------------------------------------------

    def sink(self, payload_expr: str) -> str:
        return f"{self.config.print_sink}({payload_expr});"

    def print_literal(self, text: str) -> str:
        return self.sink(_jstr(text))

    def render_value(self, name: str, type_text: str | None) -> str:
        """Java expression rendering `name` for a debug payload."""
        if type_text is not None and "[" in type_text:
            base = f"java.util.Arrays.toString({name})"
        elif type_text is not None and _is_primitive(type_text):
            return name
        else:
            base = f"String.valueOf({name})"
        limit = self.config.max_render_len
        return (f"({base}.length() > {limit} ? {base}.substring(0, {limit})"
                f' + {_jstr(TRUNCATED_SUFFIX)} : {base})')

    def indent_of(self, node: Node) -> str:
        text = self.tree.source_text
        line_start = text.rfind("\n", 0, node.start) + 1
        prefix = text[line_start:node.start]
        return prefix if prefix.strip() == "" else ""

    # -- statement-context insertion with brace wrapping ----------------------

    def stmt_context(self, stmt: Node) -> "_StmtCtx":
        parent = stmt.parent
        in_block = parent is not None and parent.kind in ("block", "case_group")
        return _StmtCtx(self, stmt, in_block)

    # -- traversal ------------------------------------------------------------

    def run(self) -> None:
        body = self.method.f["body"]
        self.visit_block(body)
        inner_indent = self._block_indent(body)
        lines = [self.print_literal(START_MARKER)] + self.preamble
        self.edits.insert(body.start + 1,
                          "\n" + inner_indent + ("\n" + inner_indent).join(lines))
        self._maybe_end_marker_at_fall_off(body, inner_indent)

    def _block_indent(self, block: Node) -> str:
        for child in block.children:
            ind = self.indent_of(child)
            if ind:
                return ind
        return self.indent_of(block) + "    "

    def _maybe_end_marker_at_fall_off(self, body: Node, indent: str) -> None:
        if self.return_type != "void":
            return
        last = body.children[-1] if body.children else None
        unsafe = ("return_stmt", "throw_stmt", "if_stmt", "try_stmt",
                  "switch_stmt", "while_stmt", "do_stmt", "for_stmt",
                  "foreach_stmt", "labeled_stmt", "block")
        if last is not None and last.kind in unsafe:
            return
        self.edits.insert(body.end - 1,
                          indent + self.print_literal(END_MARKER) + "\n")

    def visit_block(self, block: Node) -> None:
        for stmt in block.children:
            self.visit_stmt(stmt)

    def visit_stmt(self, stmt: Node) -> None:
        kind = stmt.kind
        if kind == "local_var_decl":
            names = [(d.f["name"], self.tree.text(stmt.f["type"]))
                     for d in stmt.f["declarators"]]
            self._emit_var_print(stmt, names)
            return
        if kind == "expr_stmt":
            expr = stmt.f["expr"]
            if expr.kind == "assign":
                target = _target_name(expr.f["target"], self.tree)
                if target is not None:
                    self._emit_var_print(
                        stmt, [(target, self.scope.declared_type(target))])
            elif expr.kind == "update":
                target = _target_name(expr.f["operand"], self.tree)
                if target is not None:
                    self._emit_var_print(
                        stmt, [(target, self.scope.declared_type(target))])
            return
        if kind == "block":
            self.visit_block(stmt)
            return
        if kind == "if_stmt":
            self._visit_if(stmt)
            return
        if kind in ("while_stmt", "for_stmt"):
            self._visit_loop(stmt)
            return
        if kind == "do_stmt":
            self._visit_do(stmt)
            return
        if kind == "foreach_stmt":
            self._visit_foreach(stmt)
            return
        if kind == "return_stmt":
            self._visit_return(stmt)
            return
        if kind == "try_stmt":
            self.visit_block(stmt.f["body"])
            for clause in stmt.f["catches"]:
                self.visit_block(clause.f["body"])
            if stmt.f["finally_"] is not None:
                self.visit_block(stmt.f["finally_"])
            return
        if kind == "switch_stmt":
            for group in stmt.f["groups"]:
                if group.kind == "case_group":
                    for inner in group.children:
                        self.visit_stmt(inner)
            return
        if kind == "labeled_stmt":
            self.visit_stmt(stmt.f["stmt"])
            return
        if kind == "synchronized_stmt":
            self.visit_block(stmt.f["body"])
            return

    def _emit_var_print(self, stmt: Node, names: list[tuple[str, str | None]]):
        if not names:
            return
        payload = _jstr(VAR_PREFIX + ",".join(n for n, _ in names) + " = ")
        parts = [payload]
        for i, (name, type_text) in enumerate(names):
            if i:
                parts.append(_jstr(","))
            parts.append(self.render_value(name, type_text))
        ctx = self.stmt_context(stmt)
        ctx.after(self.sink(" + ".join(parts)))
        ctx.close()

    def _visit_if(self, stmt: Node) -> None:
        cond = stmt.f["cond"]
        cond_text = _squeeze_ws(self.tree.text(cond))
        temp = self.names.fresh("t")
        ctx = self.stmt_context(stmt)
        ctx.before(f"boolean {temp} = {self.tree.text(cond)};")
        ctx.before(self.sink(_jstr(COND_PREFIX + cond_text + " = ") + f" + {temp}"))
        self.edits.replace(cond.start, cond.end, temp)
        ctx.close()
        self.visit_stmt(stmt.f["then"])
        if stmt.f["else_"] is not None:
            self.visit_stmt(stmt.f["else_"])

    def _loop_print_block(self, temp_or_value: str, payload: str,
                          tag_prefix: str) -> list[str]:
        counter = self.names.fresh("c")
        self.preamble.append(f"int {counter} = 0;")
        cap = self.config.loop_print_cap
        on = self.sink(_jstr(tag_prefix + payload + " = ") + f" + {temp_or_value}")
        off = self.print_literal(tag_prefix + payload + " = " + SUPPRESSED_VALUE)
        return [
            f"if ({counter} < {cap}) {{ {on} }} "
            f"else if ({counter} == {cap}) {{ {off} }}",
            f"{counter} = {counter} + 1;",
        ]

    def _visit_loop(self, stmt: Node) -> None:
        cond = stmt.f.get("cond")
        body = stmt.f["body"]
        if cond is None:  # for(;;) has no predicate to log
            self._enter_body(body, [])
            return
        cond_text = _squeeze_ws(self.tree.text(cond))
        temp = self.names.fresh("t")
        lines = [f"boolean {temp} = {self.tree.text(cond)};"]
        lines += self._loop_print_block(temp, cond_text, LOOP_PREFIX)
        lines.append(f"if (!{temp}) break;")
        span = stmt.f.get("cond_span")
        self.edits.replace(span[0] if span else cond.start,
                           span[1] if span else cond.end, "true")
        self._enter_body(body, lines)

    def _visit_do(self, stmt: Node) -> None:
        cond = stmt.f["cond"]
        body = stmt.f["body"]
        cond_text = _squeeze_ws(self.tree.text(cond))
        temp = self.names.fresh("t")
        self.preamble.append(f"boolean {temp} = false;")
        lines = [f"{temp} = {self.tree.text(cond)};"]
        lines += self._loop_print_block(temp, cond_text, LOOP_PREFIX)
        self.edits.replace(cond.start, cond.end, temp)
        self._exit_body(body, lines)

    def _visit_foreach(self, stmt: Node) -> None:
        var = stmt.f["var_name"]
        var_type = self.tree.text(stmt.f["var_type"])
        value = self.render_value(var, var_type)
        lines = self._loop_print_block(value, var, VAR_PREFIX)
        self._enter_body(stmt.f["body"], lines)

    def _enter_body(self, body: Node, lines: list[str]) -> None:
        if body.kind == "block":
            if lines:
                indent = self._block_indent(body)
                self.edits.insert(body.start + 1,
                                  "\n" + indent + ("\n" + indent).join(lines))
            self.visit_block(body)
            return
        indent = self.indent_of(body) or "    "
        opener = "{\n" + indent + "    " \
                 + ("\n" + indent + "    ").join(lines + [""]).rstrip() + "\n" \
                 + indent + "    " if lines else "{\n" + indent + "    "
        self.edits.insert(body.start, opener)
        self.visit_stmt(body)
        self.edits.insert(body.end, "\n" + indent + "}")

    def _exit_body(self, body: Node, lines: list[str]) -> None:
        """Insert lines at the *bottom* of a do-while body."""
        if body.kind == "block":
            indent = self._block_indent(body)
            self.edits.insert(body.end - 1,
                              indent + ("\n" + indent).join(lines) + "\n"
                              + (self.indent_of(body) or ""))
            self.visit_block(body)
            return
        indent = self.indent_of(body) or "    "
        self.edits.insert(body.start, "{\n" + indent + "    ")
        self.visit_stmt(body)
        self.edits.insert(
            body.end, "\n" + indent + "    "
            + ("\n" + indent + "    ").join(lines) + "\n" + indent + "}")

    def _visit_return(self, stmt: Node) -> None:
        expr = stmt.f.get("expr")
        ctx = self.stmt_context(stmt)
        if expr is None:
            ctx.before(self.print_literal(RETURN_VOID))
            ctx.before(self.print_literal(END_MARKER))
            ctx.close()
            return
        temp = self.names.fresh("t")
        ctx.before(f"{self.return_type} {temp} = {self.tree.text(expr)};")
        ctx.before(self.sink(
            _jstr(RETURN_PREFIX) + " + "
            + self.render_value(temp, self.return_type)))
        ctx.before(self.print_literal(END_MARKER))
        self.edits.replace(expr.start, expr.end, temp)
        ctx.close()


class _StmtCtx:
    """Inserts sibling statements before/after one statement, adding braces
    when the statement is a bare branch/loop body."""

    def __init__(self, writer: _RuleWriter, stmt: Node, in_block: bool):
        self.writer = writer
        self.stmt = stmt
        self.in_block = in_block
        self.indent = writer.indent_of(stmt)
        self.befores: list[str] = []
        self.afters: list[str] = []

    def before(self, line: str) -> None:
        self.befores.append(line)

    def after(self, line: str) -> None:
        self.afters.append(line)

    def close(self) -> None:
        edits = self.writer.edits
        if self.in_block:
            indent = self.indent or "    "
            if self.befores:
                edits.insert(self.stmt.start,
                             ("\n" + indent).join(self.befores) + "\n" + indent)
            if self.afters:
                edits.insert(self.stmt.end,
                             "\n" + indent
                             + ("\n" + indent).join(self.afters))
            return
        pieces_before = " ".join(self.befores)
        pieces_after = " ".join(self.afters)
        open_text = "{ " + (pieces_before + " " if pieces_before else "")
        close_text = (" " + pieces_after if pieces_after else "") + " }"
        edits.insert(self.stmt.start, open_text)
        edits.insert(self.stmt.end, close_text)


def _jstr(text: str) -> str:
    """Java string literal for exact text."""
    out = text.replace("\\", "\\\\").replace('"', '\\"')
    out = out.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
    return f'"{out}"'


def _squeeze_ws(text: str) -> str:
    return re.sub(r"\s+", " ", text.strip())


def _is_primitive(type_text: str) -> bool:
    bare = type_text.split("<")[0].strip()
    return bare in jlx.PRIMITIVE_TYPES and "[" not in type_text


def _target_name(target: Node, tree: SyntaxTree) -> str | None:
    cur = target
    while cur.kind in ("paren", "cast"):
        cur = cur.f.get("expr") or cur.f.get("operand")
    if cur.kind == "ident":
        return cur.f["name"]
    if cur.kind in ("field_access", "array_access"):
        base = cur
        while base.kind in ("field_access", "array_access"):
            base = base.f.get("receiver") or base.f.get("array")
        if base.kind == "ident":
            return base.f["name"]
        if base.kind == "this_expr":
            inner = cur
            if inner.kind == "field_access":
                return inner.f["name"]
    return None


# ---- LLM-guided instrumentation ----------------------------------------------


def predict_breakpoints(pt, bug: BuggyFunction, gateway,
                        adapter: JavaAdapter | None = None,
                        config: InstrumenterConfig | None = None
                        ) -> CriticalVariables:
    """Ask the model which variables matter; fall back to all locals."""
    from . import prompts

    adapter = adapter or JavaAdapter()
    config = config or InstrumenterConfig()
    prompt = prompts.breakpoint_prompt(pt, bug)
    for _ in range(max(1, config.breakpoint_retries)):
        reply = gateway.chat(
            [{"role": "user", "content": prompt}], purpose="breakpoint")
        names = _parse_variable_names(reply, bug.source)
        if names:
            return CriticalVariables(names)
    return CriticalVariables(_local_variables(bug, adapter),
                             rationale={"*": "fallback: all local variables"})


def _parse_variable_names(reply: str, source: str) -> list[str]:
    candidates: list[str] = []
    for span in re.findall(r"`([^`]+)`", reply):
        candidates.extend(re.findall(r"[A-Za-z_$][A-Za-z0-9_$]*", span))
    if not candidates:
        for chunk in re.split(r"[,\n;]+", reply):
            candidates.extend(re.findall(r"[A-Za-z_$][A-Za-z0-9_$]*",
                                         chunk.strip())[:3])
    seen: list[str] = []
    for name in candidates:
        if name in jlx.KEYWORDS or name in seen:
            continue
        if re.search(rf"\b{re.escape(name)}\b", source):
            seen.append(name)
    return seen


def _local_variables(bug: BuggyFunction, adapter: JavaAdapter) -> list[str]:
    tree = adapter.parse_member(bug.source)
    method = tree.root.children[0]
    names = [p.f["name"] for p in method.f["params"]]
    body = method.f.get("body")
    if body is not None:
        for node in body.walk():
            if node.kind == "local_var_decl":
                names.extend(node.f["names"])
            elif node.kind == "foreach_stmt":
                names.append(node.f["var_name"])
    out = []
    for name in names:
        if name not in out:
            out.append(name)
    return out


def llm_instrument(bug: BuggyFunction, vcrit: CriticalVariables,
                   gateway) -> str:
    """One model call; returns the fenced candidate verbatim, unvalidated."""
    from . import prompts

    prompt = prompts.instrument_prompt(bug, vcrit)
    reply = gateway.chat([{"role": "user", "content": prompt}],
                         purpose="instrument")
    block = prompts.extract_code_block(reply)
    if block is None:
        raise MalformedReply("no fenced code block in instrumentation reply")
    return block


def instrument(bug: BuggyFunction, pt, gateway, compile_probe=None,
               config: InstrumenterConfig | None = None,
               adapter: JavaAdapter | None = None) -> InstrumentedFunction:
    """LLM route with consistency gate, rule-based fallback on exhaustion."""
    adapter = adapter or JavaAdapter()
    config = config or InstrumenterConfig()
    llm_failure = "gateway unavailable"
    if gateway is not None:
        for attempt in range(1, config.m_inst + 1):
            try:
                vcrit = predict_breakpoints(pt, bug, gateway, adapter, config)
                candidate = llm_instrument(bug, vcrit, gateway)
            except MalformedReply:
                llm_failure = "malformed reply"
                continue
            except GatewayUnavailable:
                llm_failure = "gateway unavailable"
                break
            verdict = consistency_check(candidate, bug, compile_probe,
                                        adapter, config)
            if verdict.accepted:
                return InstrumentedFunction(candidate, "llm", attempt, verdict,
                                            original=bug.source)
            llm_failure = verdict.details
    try:
        inst = rule_instrument(bug, adapter, config)
    except RuleInstrumentationFailure as exc:
        raise InstrumentationUnavailable(
            f"llm route failed ({llm_failure}); rule route failed ({exc})")
    if compile_probe is not None:
        ok, diagnostics = compile_probe(inst.source)
        inst.check_report.compilation = bool(ok)
        inst.check_report.details = diagnostics
        if not ok:
            raise InstrumentationUnavailable(
                f"rule-instrumented output does not compile: {diagnostics}")
    return inst
