"""Split long rule bodies into chains of auxiliary rules.

The counter-model rules of the grounded and stable encodings have bodies
whose naive grounding is exponential in the number of statements.  This
module applies bucket elimination to such bodies: the non-head variable
with the fewest neighbours is eliminated by moving every literal that
mentions it into a new rule ``aux(I) :- bucket.``, where ``I`` are the
bucket variables still needed elsewhere.  The bucket is then replaced by
``aux(I)``.  The answer sets are unchanged up to the auxiliary atoms.

Run as ``python -m adfasp.decompose`` it works as a stdin-to-stdout filter
on programs printed by :mod:`adfasp.asp`.
"""

from __future__ import annotations

import sys

from .asp import (
    AggBind,
    AspProgram,
    Atom,
    Compare,
    Literal,
    Pos,
    Rule,
    Var,
    expr_vars,
    literal_vars,
    parse_program,
    render,
)

MIN_BODY = 6


def _bindings(lit: Literal) -> tuple[tuple[str, frozenset], ...]:
    """Pairs (v, needs): `lit` binds variable v once all of `needs` are bound."""
    if isinstance(lit, Pos):
        return tuple((v, frozenset()) for v in literal_vars(lit))
    if isinstance(lit, Compare) and lit.rel == "=":
        out = []
        if isinstance(lit.lhs, Var):
            out.append((lit.lhs.name, frozenset(expr_vars(lit.rhs))))
        if isinstance(lit.rhs, Var):
            out.append((lit.rhs.name, frozenset(expr_vars(lit.lhs))))
        return tuple(out)
    return ()


class _Cache:
    """Variable sets and bindings per literal, keyed by identity.

    Hashing deep literals would dominate the run time otherwise.
    """

    def __init__(self):
        self.table: dict[int, tuple] = {}

    def _get(self, lit):
        hit = self.table.get(id(lit))
        if hit is None or hit[0] is not lit:
            hit = self.table[id(lit)] = (lit, frozenset(literal_vars(lit)), _bindings(lit))
        return hit

    def vars(self, lit) -> frozenset:
        return self._get(lit)[1]

    def bindings(self, lit):
        return self._get(lit)[2]


def _closure(body, cache: _Cache | None = None) -> set[str]:
    cache = cache or _Cache()
    bound: set[str] = set()
    pending = [b for lit in body for b in cache.bindings(lit)]
    changed = True
    while changed:
        changed = False
        rest = []
        for v, needs in pending:
            if v in bound:
                continue
            if needs <= bound:
                bound.add(v)
                changed = True
            else:
                rest.append((v, needs))
        pending = rest
    return bound


def make_safe(body: list[Literal], supply: list[Literal], cache: _Cache | None = None) -> list[Literal]:
    """Extend `body` with literals from `supply` until every variable is bound.

    `supply` is the original rule body, so anything taken from it is
    implied by the rule being decomposed.
    """
    cache = cache or _Cache()
    body = list(body)
    taken = {id(x) for x in body}
    while True:
        needed = set().union(*(cache.vars(x) for x in body)) if body else set()
        missing = needed - _closure(body, cache)
        if not missing:
            return body
        pick = next((x for x in supply if id(x) not in taken and isinstance(x, Pos) and cache.vars(x) & missing), None)
        if pick is None:
            pick = next(
                (
                    x
                    for x in supply
                    if id(x) not in taken and isinstance(x, Compare) and any(v in missing for v, _ in cache.bindings(x))
                ),
                None,
            )
        if pick is None:
            raise ValueError(f"cannot bind variables {sorted(missing)}")
        body.append(pick)
        taken.add(id(pick))


def decompose_rule(rule: Rule, fresh_pred) -> list[Rule]:
    """Decompose one rule; returns the auxiliary rules followed by the new rule."""
    if rule.disjunctive or len(rule.body) < MIN_BODY or any(isinstance(x, AggBind) for x in rule.body):
        return [rule]
    head_vars = set()
    for a in rule.head:
        for e in a.args:
            head_vars |= expr_vars(e)
    original = list(rule.body)
    cache = _Cache()
    lv = cache.vars
    original_pos = {id(lit): k for k, lit in enumerate(original)}
    keep: list[Literal] = []  # aux literals must outlive their ids

    order = {}
    for lit in original:
        for v in sorted(lv(lit)):
            order.setdefault(v, len(order))
    remaining: dict[int, Literal] = {id(lit): lit for lit in original}
    lits_of: dict[str, set[int]] = {}
    for lit in original:
        for v in lv(lit):
            lits_of.setdefault(v, set()).add(id(lit))

    def neighbours(v):
        return set().union(*(lv(remaining[i]) for i in lits_of[v]))

    nb = {v: neighbours(v) for v in lits_of}
    out: list[Rule] = []
    while True:
        candidates = set(nb) - head_vars
        if not candidates:
            break
        x = min(candidates, key=lambda v: (len(nb[v]) - 1, order.get(v, 0)))
        if len(lits_of[x]) == len(remaining):
            break
        bucket = [remaining.pop(i) for i in sorted(lits_of[x], key=original_pos.__getitem__)]
        touched = set().union(*(lv(lit) for lit in bucket))
        for v in touched:
            lits_of[v].difference_update(id(lit) for lit in bucket)
        outside = head_vars.union(*(lv(remaining[i]) for v in touched for i in lits_of[v]))
        interface = sorted(nb[x] & outside, key=lambda v: order.get(v, 0))
        aux = Atom(fresh_pred(), tuple(Var(v) for v in interface))
        out.append(Rule((aux,), tuple(make_safe(bucket, original, cache))))
        new = Pos(aux)
        remaining[id(new)] = new
        keep.append(new)
        original_pos[id(new)] = len(original_pos)
        for v in touched:
            if v in interface:
                lits_of[v].add(id(new))
            if not lits_of[v]:
                del lits_of[v], nb[v]
        for v in touched:
            if v in nb:
                nb[v] = neighbours(v)
    remaining_list = list(remaining.values())
    out.append(Rule(rule.head, tuple(make_safe(remaining_list, original, cache))))
    return out


def decompose(p: AspProgram) -> AspProgram:
    used = set()
    for r in p.rules:
        used.update(a.pred for a in r.head)
        used.update(x.atom.pred for x in r.body if hasattr(x, "atom"))
    counter = [0]

    def fresh_pred():
        while True:
            name = f"aux{counter[0]}"
            counter[0] += 1
            if name not in used:
                return name

    rules: list[Rule] = []
    for r in p.rules:
        rules += decompose_rule(r, fresh_pred)
    return AspProgram(tuple(rules), p.query)


def main(argv=None) -> int:
    text = sys.stdin.read()
    sys.stdout.write(render(decompose(parse_program(text))))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
