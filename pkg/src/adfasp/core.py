"""Domain types: formulas, ADF and GRAPPA instances, three-valued interpretations."""

from __future__ import annotations

import enum
import itertools
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from typing import Union

IDENT_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def is_identifier(name: str) -> bool:
    """True if `name` is usable as an ASP constant (and thus as a statement id)."""
    return bool(IDENT_RE.match(name))


class TruthValue(enum.Enum):
    T = "t"
    F = "f"
    U = "u"

    def leq(self, other: TruthValue) -> bool:
        """Information order: u is below t and f, t and f are incomparable."""
        return self is TruthValue.U or self is other

    @property
    def asp(self) -> str:
        return {"t": "1", "f": "0", "u": "u"}[self.value]

    @classmethod
    def from_asp(cls, token: str) -> TruthValue:
        try:
            return {"1": cls.T, "0": cls.F, "u": cls.U}[token]
        except KeyError:
            raise ValueError(f"not an ASP truth value: {token!r}") from None

    def __repr__(self):
        return self.value


T, F, U = TruthValue.T, TruthValue.F, TruthValue.U


class Interpretation(Mapping):
    """Immutable, hashable total map from statements to truth values.

    Iteration and printing follow the insertion order, which by convention
    is the declaration order of the instance being interpreted.
    """

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, assignment: Mapping[str, TruthValue] | None = None, **kw: TruthValue):
        items = dict(assignment or {})
        items.update(kw)
        for s, v in items.items():
            if isinstance(v, str):
                items[s] = TruthValue(v)
        self._map = items
        self._items = tuple(items.items())
        self._hash = None

    @classmethod
    def parse(cls, text: str) -> Interpretation:
        """Read the ``a=t b=f c=u`` form produced by ``str``."""
        pairs = (tok.split("=", 1) for tok in text.split())
        return cls({s: TruthValue(v) for s, v in pairs})

    @classmethod
    def all_undecided(cls, statements) -> Interpretation:
        return cls({s: U for s in statements})

    def __getitem__(self, s):
        return self._map[s]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._items))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Interpretation):
            return self._map == other._map
        return NotImplemented

    def __str__(self):
        return " ".join(f"{s}={v.value}" for s, v in self._items)

    def __repr__(self):
        return f"Interpretation({str(self)!r})"

    def replace(self, **changes) -> Interpretation:
        new = dict(self._map)
        for s, v in changes.items():
            new[s] = TruthValue(v) if isinstance(v, str) else v
        return Interpretation(new)

    def restrict(self, statements) -> Interpretation:
        return Interpretation({s: self._map[s] for s in statements})

    def is_two_valued(self) -> bool:
        return all(v is not U for v in self._map.values())

    def true_set(self) -> list[str]:
        return [s for s, v in self._items if v is T]


def leq_i(v: Mapping[str, TruthValue], w: Mapping[str, TruthValue]) -> bool:
    """Pointwise information order ``v <=_i w``."""
    if set(v) != set(w):
        raise ValueError("interpretations over different statement sets")
    return all(v[s].leq(w[s]) for s in v)


def completions(v: Interpretation) -> Iterator[Interpretation]:
    """All two-valued interpretations extending `v`.

    Undecided statements are flipped in iteration order of `v`, with f
    tried before t, so the first completion maps every undecided statement
    to f.
    """
    open_ = [s for s, x in v.items() if x is U]
    for choice in itertools.product((F, T), repeat=len(open_)):
        yield v.replace(**dict(zip(open_, choice)))


# -- propositional formulas ----------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Neg:
    arg: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Xor:
    left: Formula
    right: Formula


Formula = Union[Var, Top, Bot, Neg, And, Or, Imp, Xor]
BINARY = (And, Or, Imp, Xor)


def parents_of(f: Formula) -> list[str]:
    """Statements occurring in `f`, deduplicated, in first-occurrence order."""
    seen: dict[str, None] = {}

    def walk(g):
        if isinstance(g, Var):
            seen.setdefault(g.name)
        elif isinstance(g, Neg):
            walk(g.arg)
        elif isinstance(g, BINARY):
            walk(g.left)
            walk(g.right)

    walk(f)
    return list(seen)


def desugar(f: Formula) -> Formula:
    """Rewrite implication and exclusive-or into negation, conjunction, disjunction."""
    if isinstance(f, (Var, Top, Bot)):
        return f
    if isinstance(f, Neg):
        return Neg(desugar(f.arg))
    a, b = desugar(f.left), desugar(f.right)
    if isinstance(f, And):
        return And(a, b)
    if isinstance(f, Or):
        return Or(a, b)
    if isinstance(f, Imp):
        return Or(Neg(a), b)
    return Or(And(a, Neg(b)), And(Neg(a), b))


def eval2(f: Formula, w: Mapping[str, TruthValue]) -> bool:
    """Classical evaluation of `f` under a two-valued assignment."""
    if isinstance(f, Var):
        try:
            x = w[f.name]
        except KeyError:
            raise ValueError(f"variable {f.name} is not assigned") from None
        if x is U:
            raise ValueError(f"variable {f.name} is undecided")
        return x is T
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Neg):
        return not eval2(f.arg, w)
    a = eval2(f.left, w)
    b = eval2(f.right, w)
    if isinstance(f, And):
        return a and b
    if isinstance(f, Or):
        return a or b
    if isinstance(f, Imp):
        return (not a) or b
    return a != b


def substitute(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Neg):
        return Neg(substitute(f.arg, mapping))
    return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))


@dataclass(frozen=True)
class AdfInstance:
    """An ADF as statements (in declaration order) with one condition each."""

    statements: tuple[str, ...]
    conditions: Mapping[str, Formula] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "statements", tuple(self.statements))
        object.__setattr__(self, "conditions", dict(self.conditions))
        if set(self.conditions) != set(self.statements):
            raise ValueError("every statement needs exactly one acceptance condition")
        known = set(self.statements)
        for s in self.statements:
            missing = [p for p in parents_of(self.conditions[s]) if p not in known]
            if missing:
                raise ValueError(f"condition of {s} mentions undeclared {missing[0]}")

    def parents(self, s: str) -> list[str]:
        return parents_of(self.conditions[s])

    def links(self) -> list[tuple[str, str]]:
        return [(p, s) for s in self.statements for p in self.parents(s)]


# -- GRAPPA ---------------------------------------------------------------------

Label = Union[int, str]

ACTIVE_TERMS = ("#", "min", "max", "sum", "count")
STATIC_TERMS = ("#t", "mint", "maxt", "sumt", "countt")
NUMERIC_TERMS = ("min", "max", "sum", "mint", "maxt", "sumt")
RELATIONS = ("<", "<=", "=", "!=", ">=", ">")


@dataclass(frozen=True)
class Term:
    """A GRAPPA term; `kind` is ``#``/``#t`` (with a label) or one of
    min, mint, max, maxt, sum, sumt, count, countt."""

    kind: str
    label: Label | None = None

    def __post_init__(self):
        if self.kind not in ACTIVE_TERMS + STATIC_TERMS:
            raise ValueError(f"unknown term kind {self.kind!r}")
        if (self.kind in ("#", "#t")) != (self.label is not None):
            raise ValueError(f"term {self.kind} label mismatch")

    @property
    def static(self) -> bool:
        return self.kind in STATIC_TERMS


@dataclass(frozen=True)
class Basic:
    coeffs: tuple[tuple[int, Term], ...]
    rel: str
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(tuple(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("basic pattern needs at least one term")
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class PNeg:
    arg: Pattern


@dataclass(frozen=True)
class PAnd:
    left: Pattern
    right: Pattern


@dataclass(frozen=True)
class POr:
    left: Pattern
    right: Pattern


Pattern = Union[Basic, PNeg, PAnd, POr]


def pattern_terms(p: Pattern) -> Iterator[Term]:
    if isinstance(p, Basic):
        for _, t in p.coeffs:
            yield t
    elif isinstance(p, PNeg):
        yield from pattern_terms(p.arg)
    else:
        yield from pattern_terms(p.left)
        yield from pattern_terms(p.right)


@dataclass(frozen=True)
class GrappaInstance:
    """Statements, labelled edges ``(source, target) -> label`` and one
    acceptance pattern per statement."""

    statements: tuple[str, ...]
    edges: Mapping[tuple[str, str], Label] = field(hash=False)
    patterns: Mapping[str, Pattern] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "statements", tuple(self.statements))
        object.__setattr__(self, "edges", dict(self.edges))
        object.__setattr__(self, "patterns", dict(self.patterns))
        known = set(self.statements)
        for u, v in self.edges:
            if u not in known or v not in known:
                raise ValueError(f"edge ({u},{v}) has an undeclared endpoint")
        if set(self.patterns) != known:
            missing = [s for s in self.statements if s not in self.patterns]
            raise ValueError(f"missing pattern for {missing[0]}" if missing else "pattern for unknown statement")

    def parents(self, s: str) -> list[str]:
        """Sources of in-edges of `s`, in statement declaration order."""
        return [r for r in self.statements if (r, s) in self.edges]

    def in_labels(self, s: str) -> list[Label]:
        return [self.edges[(r, s)] for r in self.parents(s)]
