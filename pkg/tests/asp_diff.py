"""Compare ASP programs up to cosmetic differences.

Two programs are considered the same when their rules can be paired so that
each pair differs only in

* literal order inside the body (and atom order in disjunctive heads),
* a per-rule bijective renaming of variables,
* operand order of the commutative operators ``? & + *`` and of ``=``/``!=``,
  and ``a > b`` versus ``b < a``.

Rule order and whitespace never matter.  :func:`expand_generators` turns
rules like ``lt2(0,X,0) :- val(X).`` into the facts they stand for.
"""

from __future__ import annotations

import itertools
from collections import Counter

from adfasp.asp import (
    AggBind,
    AspProgram,
    Atom,
    BinOp,
    Compare,
    Const,
    Not,
    Pos,
    Rule,
    Var,
    render_rule,
)

COMMUTATIVE = {"?", "&", "+", "*"}
SYMMETRIC = {"=", "!="}
FLIP = {">": "<", ">=": "<="}


def _expr(e):
    if isinstance(e, Var):
        return ("V", e.name)
    if isinstance(e, Const):
        return ("C", e.value)
    if isinstance(e, BinOp):
        return ("op", e.op, _expr(e.left), _expr(e.right))
    raise TypeError(e)


def _atom(a: Atom):
    return ("A", a.pred) + tuple(_expr(x) for x in a.args)


def _lit(lit):
    if isinstance(lit, Pos):
        return ("pos", _atom(lit.atom))
    if isinstance(lit, Not):
        return ("not", _atom(lit.atom))
    if isinstance(lit, Compare):
        if lit.rel in FLIP:
            return ("cmp", FLIP[lit.rel], _expr(lit.rhs), _expr(lit.lhs))
        return ("cmp", lit.rel, _expr(lit.lhs), _expr(lit.rhs))
    if isinstance(lit, AggBind):
        elems = tuple(
            (tuple(_expr(t) for t in el.terms), tuple(_lit(c) for c in el.condition)) for el in lit.elements
        )
        return ("agg", _expr(lit.var), lit.func, elems)
    raise TypeError(lit)


def skeleton(x) -> str:
    """Variable-blind canonical string; equal trees up to renaming share it."""
    if isinstance(x, tuple):
        if not x:
            return "()"
        if x[0] == "V":
            return "_"
        parts = [skeleton(y) for y in x]
        if x[0] == "op" and x[1] in COMMUTATIVE:
            parts = parts[:2] + sorted(parts[2:])
        elif x[0] == "cmp" and x[1] in SYMMETRIC:
            parts = parts[:2] + sorted(parts[2:])
        elif x[0] == "agg":
            parts = parts[:3] + [str(sorted(skeleton(el) for el in x[3]))]
        return "(" + ",".join(parts) + ")"
    return repr(x)


def _bind(a: str, b: str, m: dict, inv: dict):
    if a in m:
        return m if m[a] == b else None
    if b in inv:
        return None
    m2, inv2 = dict(m), dict(inv)
    m2[a], inv2[b] = b, a
    m2["\0inv"] = inv2
    return m2


def _unify(x, y, m):
    """Yield mappings extending `m` under which tree `x` equals tree `y`."""
    inv = m.get("\0inv", {})
    if isinstance(x, tuple) and x and x[0] == "V":
        if isinstance(y, tuple) and y and y[0] == "V":
            r = _bind(x[1], y[1], m, inv)
            if r is not None:
                yield r
        return
    if not isinstance(x, tuple) or not isinstance(y, tuple):
        if x == y:
            yield m
        return
    if len(x) != len(y) or x[:1] != y[:1]:
        return
    if not x:
        yield m
        return
    if x[0] in ("op", "cmp"):
        if x[1] != y[1]:
            return
        orders = [(x[2], x[3])]
        if (x[0] == "op" and x[1] in COMMUTATIVE) or (x[0] == "cmp" and x[1] in SYMMETRIC):
            orders.append((x[3], x[2]))
        for l, r in orders:
            for m1 in _unify(l, y[2], m):
                yield from _unify(r, y[3], m1)
        return
    if x[0] == "agg":
        if x[2] != y[2] or len(x[3]) != len(y[3]):
            return
        for m1 in _unify(x[1], y[1], m):
            for perm in itertools.permutations(y[3]):
                yield from _unify_seq(x[3], perm, m1)
        return
    yield from _unify_seq(x, y, m)


def _unify_seq(xs, ys, m):
    if len(xs) != len(ys):
        return
    if not xs:
        yield m
        return
    for m1 in _unify(xs[0], ys[0], m):
        yield from _unify_seq(xs[1:], ys[1:], m1)


def _match_bodies(xs, ys, m):
    """Backtracking multiset matching, most constrained literal first."""
    if not xs:
        yield m
        return
    best = None
    for i, x in enumerate(xs):
        cands = [j for j, y in enumerate(ys) if next(_unify(x, y, m), None) is not None]
        if best is None or len(cands) < len(best[1]):
            best = (i, cands)
        if not cands:
            return
    i, cands = best
    rest_x = xs[:i] + xs[i + 1 :]
    for j in cands:
        rest_y = ys[:j] + ys[j + 1 :]
        for m1 in _unify(xs[i], ys[j], m):
            yield from _match_bodies(rest_x, rest_y, m1)


class NormRule:
    def __init__(self, rule: Rule):
        self.rule = rule
        self.head = tuple(("pos", _atom(a)) for a in rule.head)
        self.body = tuple(_lit(x) for x in rule.body)
        self.key = (
            tuple(sorted(skeleton(h) for h in self.head)),
            tuple(sorted(skeleton(b) for b in self.body)),
        )

    def matches(self, other: NormRule) -> bool:
        if self.key != other.key:
            return False
        for heads in itertools.permutations(other.head):
            for m in _unify_seq(self.head, heads, {}):
                if next(_match_bodies(list(self.body), list(other.body), m), None) is not None:
                    return True
        return False


def expand_generators(p: AspProgram) -> AspProgram:
    """Replace rules whose bodies only read facts by the facts they derive.

    Negative literals are checked against the facts present before the rule
    is expanded, which is enough for the stratified rules of fact tables.
    """
    facts = [r for r in p.rules if not r.body and len(r.head) == 1]
    fact_preds = {r.head[0].pred for r in facts}
    out = []
    extra = []
    expanded = []

    def derived_elsewhere(pred, rule):
        return any(r is not rule and r.body and any(a.pred == pred for a in r.head) for r in p.rules)

    def simple(r):
        if not r.body or len(r.head) != 1 or not all(isinstance(x, (Pos, Not)) for x in r.body):
            return False
        for x in r.body:
            if x.atom.pred not in fact_preds or derived_elsewhere(x.atom.pred, r):
                return False
            if isinstance(x, Pos) and x.atom.pred == r.head[0].pred:
                return False
            if isinstance(x, Not) and next(_unify(_atom(x.atom), _atom(r.head[0]), {}), None) is not None:
                return False
        return True

    for r in p.rules:
        pos = [x for x in r.body if isinstance(x, Pos)]
        if not simple(r):
            out.append(r)
            continue
        expanded.append(r)
        known = {render_rule(f) for f in facts + extra}
        tables = {f.head[0].pred: [] for f in facts}
        for f in facts:
            tables[f.head[0].pred].append(f.head[0])
        for m in _ground(pos, tables, {}):
            neg_ok = all(render_rule(Rule((_subst(x.atom, m),))) not in known for x in r.body if isinstance(x, Not))
            if neg_ok:
                extra.append(Rule((_subst(r.head[0], m),)))
    # predicates that only fed the expanded rules go away with them
    read = {x.atom.pred for r in out if r.body for x in r.body if hasattr(x, "atom")}
    helpers = {x.atom.pred for r in expanded for x in r.body if isinstance(x, Pos)} - read
    helpers -= {a.pred for r in extra for a in r.head}
    out = [r for r in out if r.body or r.head[0].pred not in helpers]
    return AspProgram(tuple(out) + tuple(extra), p.query)


def _ground(pos, tables, m):
    if not pos:
        yield m
        return
    a = pos[0].atom
    for f in tables[a.pred]:
        if len(f.args) != len(a.args):
            continue
        m1 = dict(m)
        ok = True
        for x, c in zip(a.args, f.args):
            if isinstance(x, Var):
                if m1.setdefault(x.name, c) != c:
                    ok = False
                    break
            elif x != c:
                ok = False
                break
        if ok:
            yield from _ground(pos[1:], tables, m1)


def _subst(a: Atom, m) -> Atom:
    return Atom(a.pred, tuple(m.get(x.name, x) if isinstance(x, Var) else x for x in a.args))


def drop_facts(p: AspProgram, pred: str, keep) -> AspProgram:
    """Remove facts of `pred` whose argument values fail `keep`."""
    rules = []
    for r in p.rules:
        if not r.body and len(r.head) == 1 and r.head[0].pred == pred:
            if not keep(tuple(x.value for x in r.head[0].args)):
                continue
        rules.append(r)
    return AspProgram(tuple(rules), p.query)


def diff(a: AspProgram, b: AspProgram) -> tuple[list[str], list[str]]:
    """Rules of `a` without a partner in `b`, and vice versa (rendered)."""
    left = [NormRule(r) for r in a.rules]
    right = [NormRule(r) for r in b.rules]
    groups: dict = {}
    for i, r in enumerate(right):
        groups.setdefault(r.key, []).append(i)
    used = set()
    unmatched = []
    for r in left:
        hit = next((j for j in groups.get(r.key, []) if j not in used and r.matches(right[j])), None)
        if hit is None:
            unmatched.append(render_rule(r.rule))
        else:
            used.add(hit)
    extra = [render_rule(right[j].rule) for j in range(len(right)) if j not in used]
    return unmatched, extra


def same(a: AspProgram, b: AspProgram) -> bool:
    left, right = diff(a, b)
    return not left and not right


def rule_counts(p: AspProgram) -> Counter:
    return Counter(NormRule(r).key for r in p.rules)
