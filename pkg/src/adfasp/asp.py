"""A small AST for the ASP fragment the encoders emit, with a printer and reader.

The printer is deterministic and writes the compact style of hand-written
clingo listings: no spaces inside atoms or comparisons, ``" :- "`` between
head and body, commas between body literals.  Aggregate bindings are
spaced, e.g. ``V = #sum{1: X = 0}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

# -- terms ----------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: int | str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in _PREC:
            raise ValueError(f"unsupported operator {self.op!r}")


Expr = Union[Const, Var, BinOp]

_PREC = {"?": 1, "&": 2, "+": 3, "-": 3, "*": 4}
RELATIONS = ("=", "!=", "<", "<=", ">", ">=")
AGGREGATES = ("#sum", "#min", "#max", "#count")


def const(x) -> Const:
    return x if isinstance(x, Const) else Const(x)


# -- literals and rules -------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Expr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Pos:
    atom: Atom


@dataclass(frozen=True)
class Not:
    atom: Atom


@dataclass(frozen=True)
class Compare:
    lhs: Expr
    rel: str
    rhs: Expr

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unsupported relation {self.rel!r}")


@dataclass(frozen=True)
class AggElement:
    terms: tuple[Expr, ...]
    condition: tuple[Literal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "condition", tuple(self.condition))


@dataclass(frozen=True)
class AggBind:
    """``var = #func{elements}``."""

    var: Var
    func: str
    elements: tuple[AggElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.func not in AGGREGATES:
            raise ValueError(f"unsupported aggregate {self.func!r}")


Literal = Union[Pos, Not, Compare, AggBind]


@dataclass(frozen=True)
class Rule:
    head: tuple[Atom, ...] = ()
    body: tuple[Literal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "body", tuple(self.body))

    @property
    def disjunctive(self) -> bool:
        return len(self.head) > 1


@dataclass(frozen=True)
class AspProgram:
    rules: tuple[Rule, ...] = ()
    # ("cred" | "skept", statement) once a query has been attached
    query: tuple[str, str] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def __add__(self, other: AspProgram) -> AspProgram:
        return AspProgram(self.rules + other.rules, self.query or other.query)

    def __str__(self):
        return render(self)


def atom(pred: str, *args) -> Atom:
    return Atom(pred, tuple(a if isinstance(a, (Var, BinOp, Const)) else Const(a) for a in args))


def fact(pred: str, *args) -> Rule:
    return Rule((atom(pred, *args),))


# -- rendering --------------------------------------------------------------------

_SYMBOL_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def render_const(value: int | str) -> str:
    if isinstance(value, int):
        return str(value)
    if _SYMBOL_RE.match(value):
        return value
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_expr(e: Expr, parent: int = 0, right: bool = False) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        text = render_const(e.value)
        if isinstance(e.value, int) and e.value < 0 and parent:
            return f"({text})"
        return text
    prec = _PREC[e.op]
    text = f"{render_expr(e.left, prec)}{e.op}{render_expr(e.right, prec, True)}"
    if prec < parent or (right and prec == parent):
        return f"({text})"
    return text


def render_atom(a: Atom) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({','.join(render_expr(x) for x in a.args)})"


def render_literal(lit: Literal, spaced: bool = False) -> str:
    if isinstance(lit, Pos):
        return render_atom(lit.atom)
    if isinstance(lit, Not):
        return "not " + render_atom(lit.atom)
    if isinstance(lit, Compare):
        sep = f" {lit.rel} " if spaced else lit.rel
        return f"{render_expr(lit.lhs)}{sep}{render_expr(lit.rhs)}"
    if isinstance(lit, AggBind):
        elems = []
        for el in lit.elements:
            text = ",".join(render_expr(t) for t in el.terms)
            if el.condition:
                text += ": " + ",".join(render_literal(c, True) for c in el.condition)
            elems.append(text)
        return f"{lit.var.name} = {lit.func}{{{';'.join(elems)}}}"
    raise TypeError(f"not a literal: {lit!r}")


def render_rule(r: Rule) -> str:
    head = "|".join(render_atom(a) for a in r.head)
    if not r.body:
        return head + "."
    body = ",".join(render_literal(lit) for lit in r.body)
    return f"{head} :- {body}." if head else f":- {body}."


def render(p: AspProgram) -> str:
    return "".join(render_rule(r) + "\n" for r in p.rules)


def max_arity(p: AspProgram) -> int:
    best = 0
    for r in p.rules:
        for a in r.head:
            best = max(best, len(a.args))
        for lit in r.body:
            if isinstance(lit, (Pos, Not)):
                best = max(best, len(lit.atom.args))
    return best


def rule_vars(r: Rule) -> set[str]:
    out: set[str] = set()

    def expr(e):
        if isinstance(e, Var):
            out.add(e.name)
        elif isinstance(e, BinOp):
            expr(e.left)
            expr(e.right)

    def lit(x):
        if isinstance(x, (Pos, Not)):
            for a in x.atom.args:
                expr(a)
        elif isinstance(x, Compare):
            expr(x.lhs)
            expr(x.rhs)
        elif isinstance(x, AggBind):
            # variables local to aggregate elements are not rule variables
            out.add(x.var.name)

    for a in r.head:
        for e in a.args:
            expr(e)
    for b in r.body:
        lit(b)
    return out


def expr_vars(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, BinOp):
        return expr_vars(e.left) | expr_vars(e.right)
    return set()


def literal_vars(lit: Literal) -> set[str]:
    """Global variables of a body literal (aggregate-local ones excluded)."""
    if isinstance(lit, (Pos, Not)):
        return set().union(*(expr_vars(a) for a in lit.atom.args)) if lit.atom.args else set()
    if isinstance(lit, Compare):
        return expr_vars(lit.lhs) | expr_vars(lit.rhs)
    return {lit.var.name} | _agg_globals(lit)


def _agg_globals(lit: AggBind) -> set[str]:
    # every variable inside our aggregates is already bound outside (Z_r, V...)
    out: set[str] = set()
    for el in lit.elements:
        for t in el.terms:
            out |= expr_vars(t)
        for c in el.condition:
            out |= literal_vars(c)
    return out


# -- reading ----------------------------------------------------------------------


class AspSyntaxError(ValueError):
    pass


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<str>"(?:[^"\\]|\\.)*")
      | (?P<num>\d+)
      | (?P<agg>\#(?:sum|min|max|count))
      | (?P<var>[A-Z_][A-Za-z0-9_]*)
      | (?P<id>[a-z][A-Za-z0-9_]*)
      | (?P<op>:-|!=|<=|>=|[=<>&?+\-*|,.;:(){}])
    )""",
    re.X,
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    text = re.sub(r"%[^\n]*", "", text)
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return toks
        m = _TOKEN.match(text, pos)
        if not m:
            raise AspSyntaxError(f"unexpected input at offset {pos}: {text[pos:pos + 20]!r}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
        pos = m.end()


class _Reader:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None)

    def at(self, value, k=0):
        return self.peek(k)[1] == value and self.peek(k)[0] == "op"

    def take(self, value=None):
        kind, text = self.peek()
        if kind is None or (value is not None and not (kind == "op" and text == value)):
            raise AspSyntaxError(f"expected {value!r}, got {text!r}")
        self.i += 1
        return kind, text

    def program(self):
        rules = []
        while self.peek()[0] is not None:
            rules.append(self.rule())
        return AspProgram(tuple(rules))

    def rule(self):
        head = []
        if not self.at(":-"):
            head.append(self.atom())
            while self.at("|"):
                self.take("|")
                head.append(self.atom())
        body = []
        if self.at(":-"):
            self.take(":-")
            body = self.body(".")
        self.take(".")
        return Rule(tuple(head), tuple(body))

    def body(self, *stops):
        out = [self.literal()]
        while self.at(","):
            self.take(",")
            out.append(self.literal())
        return out

    def atom(self):
        kind, name = self.take()
        if kind != "id":
            raise AspSyntaxError(f"expected a predicate, got {name!r}")
        args = []
        if self.at("("):
            self.take("(")
            args.append(self.expr())
            while self.at(","):
                self.take(",")
                args.append(self.expr())
            self.take(")")
        return Atom(name, tuple(args))

    def literal(self):
        kind, text = self.peek()
        if kind == "id" and text == "not":
            self.take()
            return Not(self.atom())
        if kind == "id" and not self._rel_follows():
            return Pos(self.atom())
        if kind == "var" and self.at("=", 1) and self.peek(2)[0] == "agg":
            self.take()
            self.take("=")
            return self.aggregate(Var(text))
        lhs = self.expr()
        rel = self.take()[1]
        if rel not in RELATIONS:
            raise AspSyntaxError(f"expected a relation, got {rel!r}")
        return Compare(lhs, rel, self.expr())

    def _rel_follows(self):
        # a bare identifier (or a function term) directly followed by a relation
        k = 1
        if self.at("(", 1):
            depth = 0
            while True:
                kind, text = self.peek(k)
                if kind is None:
                    return False
                if kind == "op" and text == "(":
                    depth += 1
                elif kind == "op" and text == ")":
                    depth -= 1
                    if depth == 0:
                        k += 1
                        break
                k += 1
        kind, text = self.peek(k)
        return kind == "op" and text in RELATIONS + tuple(_PREC)

    def aggregate(self, var):
        _, func = self.take()
        self.take("{")
        elements = []
        if not self.at("}"):
            elements.append(self.element())
            while self.at(";"):
                self.take(";")
                elements.append(self.element())
        self.take("}")
        return AggBind(var, func, tuple(elements))

    def element(self):
        terms = [self.expr()]
        while self.at(","):
            self.take(",")
            terms.append(self.expr())
        cond = []
        if self.at(":"):
            self.take(":")
            cond.append(self.literal())
            while self.at(","):
                self.take(",")
                cond.append(self.literal())
        return AggElement(tuple(terms), tuple(cond))

    def expr(self, level=1):
        if level > 4:
            return self.primary()
        left = self.expr(level + 1)
        while True:
            kind, text = self.peek()
            if kind == "op" and _PREC.get(text) == level:
                self.take()
                left = BinOp(text, left, self.expr(level + 1))
            else:
                return left

    def primary(self):
        kind, text = self.take()
        if kind == "num":
            return Const(int(text))
        if kind == "var":
            return Var(text)
        if kind == "id":
            return Const(text)
        if kind == "str":
            return Const(re.sub(r"\\(.)", r"\1", text[1:-1]))
        if kind == "op" and text == "-":
            kind2, num = self.take()
            if kind2 != "num":
                raise AspSyntaxError("unary minus only before integers")
            return Const(-int(num))
        if kind == "op" and text == "(":
            e = self.expr()
            self.take(")")
            return e
        raise AspSyntaxError(f"unexpected {text!r} in a term")


def parse_program(text: str) -> AspProgram:
    """Read back programs in the fragment produced by `render`."""
    return _Reader(text).program()
