"""Readers and printers for the ADF and GRAPPA instance formats.

ADF files are sequences of facts ``s(x).`` (or ``statement(x).``) and
``ac(x,F).`` with ``F`` in prefix notation over ``and``, ``or``, ``neg``,
``imp``, ``xor``, ``c(v)`` and ``c(f)``::

    s(a). s(b). ac(a,or(neg(b),b)). ac(b,b).

GRAPPA files use ``s(x).``, ``e(u,v,l).`` for an edge labelled ``l`` and
``pat(x,"P").`` where ``P`` is an acceptance pattern such as
``#t(+)-#(+)=0 && #(-)=0``.  In both formats ``%`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import (
    NUMERIC_TERMS,
    AdfInstance,
    And,
    Basic,
    Bot,
    Formula,
    GrappaInstance,
    Imp,
    Label,
    Neg,
    Or,
    Pattern,
    PAnd,
    PNeg,
    POr,
    Term,
    Top,
    Var,
    Xor,
    is_identifier,
    parents_of,
    pattern_terms,
)


class ParseError(ValueError):
    """Raised for malformed instance text; `line` and `column` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0, kind: str = "syntax"):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column
        self.kind = kind


class _Source:
    def __init__(self, text: str):
        self.text = text
        self._starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(self, pos: int) -> tuple[int, int]:
        lo, hi = 0, len(self._starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._starts[mid] <= pos:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, pos - self._starts[lo] + 1

    def error(self, message, pos, kind="syntax"):
        line, col = self.where(pos)
        return ParseError(message, line, col, kind)


def _strip_comments(text: str) -> str:
    # blank comments out in place so positions stay valid; '%' inside a quoted pattern is kept
    out = []
    in_str = in_comment = False
    for ch in text:
        if in_comment:
            if ch == "\n":
                in_comment = False
                out.append(ch)
            else:
                out.append(" ")
        elif ch == '"':
            in_str = not in_str
            out.append(ch)
        elif ch == "%" and not in_str:
            in_comment = True
            out.append(" ")
        else:
            out.append(ch)
    return "".join(out)


@dataclass
class _Fact:
    name: str
    args: list[tuple[str, int]]  # raw text and its offset
    pos: int


_NAME_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(")


def _facts(src: _Source, text: str) -> list[_Fact]:
    facts = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            return facts
        m = _NAME_RE.match(text, pos)
        if not m:
            raise src.error("expected a fact like name(...).", pos)
        start = pos
        pos = m.end()
        args = []
        depth = 0
        in_str = False
        arg_start = pos
        while True:
            if pos >= n:
                raise src.error("unterminated fact", start)
            ch = text[pos]
            if in_str:
                if ch == '"':
                    in_str = False
            elif ch == '"':
                in_str = True
            elif ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    args.append((text[arg_start:pos], arg_start))
                    pos += 1
                    break
                depth -= 1
            elif ch == "," and depth == 0:
                args.append((text[arg_start:pos], arg_start))
                arg_start = pos + 1
            pos += 1
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n or text[pos] != ".":
            raise src.error("missing '.' after fact", pos)
        pos += 1
        facts.append(_Fact(m.group(1), args, start))


def _ident(src: _Source, raw: str, off: int) -> str:
    name = raw.strip()
    lead = off + len(raw) - len(raw.lstrip())
    if not name:
        raise src.error("empty argument", off)
    if not is_identifier(name):
        raise src.error(f"bad statement identifier {name!r}", lead, "bad-identifier")
    return name


def _arity(src, fact, k):
    if len(fact.args) != k:
        raise src.error(f"{fact.name}/{len(fact.args)} should have {k} arguments", fact.pos)


# -- formulas ---------------------------------------------------------------------

_FTOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|(.))", re.S)
_CONNECTIVES = {"and": And, "or": Or, "imp": Imp, "xor": Xor}


def parse_formula(raw: str, src: _Source | None = None, off: int = 0) -> Formula:
    """Parse a prefix-notation acceptance condition."""
    src = src or _Source(raw)
    toks = []
    for m in _FTOKEN.finditer(raw):
        if m.group(1) is not None:
            toks.append((m.group(1), off + m.start(1)))
        elif m.group(2) is not None:
            toks.append((m.group(2), off + m.start(2)))
    end = off + len(raw)
    i = 0

    def peek():
        return toks[i][0] if i < len(toks) else None

    def expect(tok):
        nonlocal i
        if peek() != tok:
            where = toks[i][1] if i < len(toks) else end
            raise src.error(f"expected {tok!r}", where)
        i += 1

    def formula():
        nonlocal i
        if i >= len(toks):
            raise src.error("unexpected end of formula", end)
        tok, where = toks[i]
        i += 1
        if peek() == "(":
            if tok in _CONNECTIVES:
                expect("(")
                a = formula()
                expect(",")
                b = formula()
                expect(")")
                return _CONNECTIVES[tok](a, b)
            if tok == "neg":
                expect("(")
                a = formula()
                expect(")")
                return Neg(a)
            if tok == "c":
                expect("(")
                if peek() not in ("v", "f"):
                    raise src.error("expected c(v) or c(f)", toks[i][1] if i < len(toks) else end)
                val = toks[i][0]
                i += 1
                expect(")")
                return Top() if val == "v" else Bot()
            raise src.error(f"unknown connective {tok!r}", where)
        if not is_identifier(tok):
            kind = "bad-identifier" if re.fullmatch(r"[A-Za-z0-9_]+", tok) else "syntax"
            raise src.error(f"unexpected {tok!r}", where, kind)
        return Var(tok)

    f = formula()
    if i != len(toks):
        raise src.error(f"trailing input {toks[i][0]!r}", toks[i][1])
    return f


def format_formula(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "c(v)"
    if isinstance(f, Bot):
        return "c(f)"
    if isinstance(f, Neg):
        return f"neg({format_formula(f.arg)})"
    name = {And: "and", Or: "or", Imp: "imp", Xor: "xor"}[type(f)]
    return f"{name}({format_formula(f.left)},{format_formula(f.right)})"


def _decode(source) -> str:
    if isinstance(source, (bytes, bytearray)):
        try:
            return bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc.reason}", kind="syntax") from None
    return source


def parse_adf(source: str | bytes) -> AdfInstance:
    text = _strip_comments(_decode(source))
    src = _Source(text)
    statements: dict[str, int] = {}
    conditions: dict[str, tuple[Formula, int]] = {}
    for fact in _facts(src, text):
        if fact.name in ("s", "statement"):
            _arity(src, fact, 1)
            name = _ident(src, *fact.args[0])
            if name in statements:
                raise src.error(f"statement {name} declared twice", fact.pos, "duplicate-statement")
            statements[name] = fact.pos
        elif fact.name == "ac":
            _arity(src, fact, 2)
            name = _ident(src, *fact.args[0])
            if name in conditions:
                raise src.error(f"second condition for {name}", fact.pos, "duplicate-condition")
            conditions[name] = (parse_formula(fact.args[1][0], src, fact.args[1][1]), fact.args[1][1])
        else:
            raise src.error(f"unknown fact {fact.name}/{len(fact.args)}", fact.pos)
    for name, (f, pos) in conditions.items():
        if name not in statements:
            raise src.error(f"condition for undeclared statement {name}", pos, "undeclared-statement")
        for p in parents_of(f):
            if p not in statements:
                raise src.error(f"condition of {name} mentions undeclared {p}", pos, "undeclared-statement")
    for name, pos in statements.items():
        if name not in conditions:
            raise src.error(f"missing condition for {name}", pos, "missing-condition")
    return AdfInstance(tuple(statements), {s: conditions[s][0] for s in statements})


def format_adf(adf: AdfInstance) -> str:
    lines = [f"s({s})." for s in adf.statements]
    lines += [f"ac({s},{format_formula(adf.conditions[s])})." for s in adf.statements]
    return "\n".join(lines) + ("\n" if lines else "")


# -- GRAPPA patterns ----------------------------------------------------------------

_PTOKEN = re.compile(
    r"\s*(?:(#t\(|#\()|(&&|\|\||<=|>=|!=|[<>=!()+\-*])|(\d+)|([A-Za-z_][A-Za-z0-9_]*))"
)
_TERM_WORDS = {"min", "mint", "max", "maxt", "sum", "sumt", "count", "countt"}


def parse_label(raw: str) -> Label:
    raw = raw.strip()
    if re.fullmatch(r"-?\d+", raw):
        return int(raw)
    if not raw or any(c in raw for c in '(),"\'.%#') or any(c.isspace() for c in raw):
        raise ValueError(f"bad label {raw!r}")
    return raw


def format_label(label: Label) -> str:
    return str(label)


def parse_pattern(raw: str, src: _Source | None = None, off: int = 0) -> Pattern:
    """Parse an acceptance pattern (see the module docstring for the grammar)."""
    src = src or _Source(raw)
    toks: list[tuple[str, str, int]] = []
    pos = 0
    n = len(raw)
    while True:
        while pos < n and raw[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _PTOKEN.match(raw, pos)
        if not m:
            raise src.error(f"unexpected character {raw[pos]!r} in pattern", off + pos)
        if m.group(1):
            close = raw.find(")", m.end())
            if close < 0:
                raise src.error("unterminated label", off + m.start(1))
            try:
                label = parse_label(raw[m.end():close])
            except ValueError as exc:
                raise src.error(str(exc), off + m.end()) from None
            toks.append(("term", (m.group(1)[:-1], label), off + m.start(1)))
            pos = close + 1
            continue
        if m.group(2):
            toks.append(("op", m.group(2), off + m.start(2)))
        elif m.group(3):
            toks.append(("int", int(m.group(3)), off + m.start(3)))
        else:
            word = m.group(4)
            if word not in _TERM_WORDS:
                raise src.error(f"unknown term {word!r}", off + m.start(4))
            toks.append(("term", (word, None), off + m.start(4)))
        pos = m.end()
    end = off + n
    i = 0

    def peek(kind=None, value=None):
        if i >= len(toks):
            return False
        k, v, _ = toks[i]
        return (kind is None or k == kind) and (value is None or v == value)

    def here():
        return toks[i][2] if i < len(toks) else end

    def take_op(value):
        nonlocal i
        if not peek("op", value):
            raise src.error(f"expected {value!r}", here())
        i += 1

    def disj():
        p = conj()
        while peek("op", "||"):
            take_op("||")
            p = POr(p, conj())
        return p

    def conj():
        p = atom()
        while peek("op", "&&"):
            take_op("&&")
            p = PAnd(p, atom())
        return p

    def atom():
        nonlocal i
        if peek("op", "!"):
            take_op("!")
            return PNeg(atom())
        if peek("op", "("):
            take_op("(")
            p = disj()
            take_op(")")
            return p
        return basic()

    def summand(sign):
        nonlocal i
        coeff = sign
        if peek("int"):
            coeff *= toks[i][1]
            i += 1
            take_op("*")
        if not peek("term"):
            raise src.error("expected a term", here())
        kind, label = toks[i][1]
        i += 1
        return coeff, Term(kind, label)

    def basic():
        nonlocal i
        sign = 1
        if peek("op", "-"):
            take_op("-")
            sign = -1
        coeffs = [summand(sign)]
        while peek("op", "+") or peek("op", "-"):
            sign = 1 if toks[i][1] == "+" else -1
            i += 1
            coeffs.append(summand(sign))
        if not peek("op") or toks[i][1] not in ("<", "<=", "=", "!=", ">=", ">"):
            raise src.error("expected a relation", here())
        rel = toks[i][1]
        i += 1
        neg = 1
        if peek("op", "-"):
            take_op("-")
            neg = -1
        if not peek("int"):
            raise src.error("expected an integer bound", here())
        bound = neg * toks[i][1]
        i += 1
        return Basic(tuple(coeffs), rel, bound)

    p = disj()
    if i != len(toks):
        raise src.error("trailing input in pattern", here())
    return p


def _format_term(t: Term) -> str:
    if t.label is not None:
        return f"{t.kind}({format_label(t.label)})"
    return t.kind


def format_pattern(p: Pattern) -> str:
    if isinstance(p, Basic):
        parts = []
        for k, (a, t) in enumerate(p.coeffs):
            mag = abs(a)
            body = _format_term(t) if mag == 1 else f"{mag}*{_format_term(t)}"
            if a < 0:
                parts.append("-" + body)
            else:
                parts.append(("+" if k else "") + body)
        return f"{''.join(parts)}{p.rel}{p.bound}"
    if isinstance(p, PNeg):
        inner = format_pattern(p.arg)
        return f"!{inner}" if isinstance(p.arg, PNeg) else f"!({inner})"
    if isinstance(p, PAnd):
        left = format_pattern(p.left)
        if isinstance(p.left, POr):
            left = f"({left})"
        right = format_pattern(p.right)
        if isinstance(p.right, (PAnd, POr)):
            right = f"({right})"
        return f"{left} && {right}"
    left = format_pattern(p.left)
    right = format_pattern(p.right)
    if isinstance(p.right, POr):
        right = f"({right})"
    return f"{left} || {right}"


def _numeric_violation(instance: GrappaInstance):
    for s in instance.statements:
        kinds = {t.kind for t in pattern_terms(instance.patterns[s])}
        numeric = kinds & set(NUMERIC_TERMS)
        if numeric:
            bad = [lab for lab in instance.in_labels(s) if not isinstance(lab, int)]
            if bad:
                return s, f"{sorted(numeric)[0]} at {s} over symbolic label {bad[0]!r}"
    return None


def check_numeric_labels(instance: GrappaInstance) -> None:
    """Raise ValueError if a numeric term ranges over a symbolic in-label."""
    hit = _numeric_violation(instance)
    if hit:
        raise ValueError(hit[1])


def parse_grappa(source: str | bytes) -> GrappaInstance:
    text = _strip_comments(_decode(source))
    src = _Source(text)
    statements: dict[str, int] = {}
    edges: dict[tuple[str, str], tuple[Label, int]] = {}
    patterns: dict[str, tuple[Pattern, int]] = {}
    for fact in _facts(src, text):
        if fact.name in ("s", "statement"):
            _arity(src, fact, 1)
            name = _ident(src, *fact.args[0])
            if name in statements:
                raise src.error(f"statement {name} declared twice", fact.pos, "duplicate-statement")
            statements[name] = fact.pos
        elif fact.name == "e":
            _arity(src, fact, 3)
            u = _ident(src, *fact.args[0])
            v = _ident(src, *fact.args[1])
            try:
                label = parse_label(fact.args[2][0])
            except ValueError as exc:
                raise src.error(str(exc), fact.args[2][1]) from None
            if (u, v) in edges:
                raise src.error(f"edge ({u},{v}) given twice", fact.pos, "duplicate-condition")
            edges[(u, v)] = (label, fact.pos)
        elif fact.name == "pat":
            _arity(src, fact, 2)
            name = _ident(src, *fact.args[0])
            raw, off = fact.args[1]
            stripped = raw.strip()
            if len(stripped) < 2 or stripped[0] != '"' or stripped[-1] != '"':
                raise src.error("pattern must be a quoted string", off)
            lead = off + raw.index('"') + 1
            if name in patterns:
                raise src.error(f"second pattern for {name}", fact.pos, "duplicate-condition")
            patterns[name] = (parse_pattern(stripped[1:-1], src, lead), fact.pos)
        else:
            raise src.error(f"unknown fact {fact.name}/{len(fact.args)}", fact.pos)
    for (u, v), (_, pos) in edges.items():
        for x in (u, v):
            if x not in statements:
                raise src.error(f"edge endpoint {x} is not declared", pos, "undeclared-statement")
    for name, (_, pos) in patterns.items():
        if name not in statements:
            raise src.error(f"pattern for undeclared statement {name}", pos, "undeclared-statement")
    for name, pos in statements.items():
        if name not in patterns:
            raise src.error(f"missing pattern for {name}", pos, "missing-condition")
    inst = GrappaInstance(
        tuple(statements),
        {e: lab for e, (lab, _) in edges.items()},
        {s: patterns[s][0] for s in statements},
    )
    hit = _numeric_violation(inst)
    if hit:
        raise src.error(hit[1], patterns[hit[0]][1], "bad-label")
    return inst


def format_grappa(g: GrappaInstance) -> str:
    lines = [f"s({s})." for s in g.statements]
    lines += [f"e({u},{v},{format_label(lab)})." for (u, v), lab in g.edges.items()]
    lines += [f'pat({s},"{format_pattern(g.patterns[s])}").' for s in g.statements]
    return "\n".join(lines) + ("\n" if lines else "")
