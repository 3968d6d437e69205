"""Brute-force reference semantics for ADFs and GRAPPA instances.

Everything here follows the definitions literally: the characteristic
operator quantifies over completions, and each semantics is a filter over
all interpretations.  It is exponential and meant for small instances and
as the ground truth for the ASP encodings.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

from .core import (
    F,
    NUMERIC_TERMS,
    T,
    U,
    AdfInstance,
    Basic,
    Bot,
    GrappaInstance,
    Interpretation,
    PAnd,
    Pattern,
    PNeg,
    POr,
    Term,
    completions,
    eval2,
    leq_i,
    substitute,
)

ADF_SEMANTICS = ("adm", "com", "prf", "grd", "mod", "stb")
GRAPPA_SEMANTICS = ("adm", "com", "prf")

INF = math.inf


def _decide(results) -> object:
    """Collapse an iterable of booleans to T (all true), F (all false) or U."""
    seen = set()
    for r in results:
        seen.add(r)
        if len(seen) == 2:
            return U
    return T if seen == {True} else F


def gamma_adf(adf: AdfInstance, v: Interpretation) -> Interpretation:
    out = {}
    for s in adf.statements:
        phi = adf.conditions[s]
        local = v.restrict(adf.parents(s))
        out[s] = _decide(eval2(phi, w) for w in completions(local))
    return Interpretation(out)


def holds(adf: AdfInstance, v: Interpretation, sigma: str) -> bool:
    if sigma == "adm":
        return leq_i(v, gamma_adf(adf, v))
    if sigma == "com":
        return v == gamma_adf(adf, v)
    if sigma == "model":
        if not v.is_two_valued():
            raise ValueError("model check needs a two-valued interpretation")
        return all(eval2(adf.conditions[s], v) == (v[s] is T) for s in adf.statements)
    raise ValueError(f"unknown check {sigma!r}")


def grounded(adf: AdfInstance) -> Interpretation:
    """Least fixpoint of the characteristic operator, by iteration from all-u."""
    v = Interpretation.all_undecided(adf.statements)
    while True:
        w = gamma_adf(adf, v)
        if w == v:
            return v
        v = w


def reduct(adf: AdfInstance, v: Interpretation) -> AdfInstance:
    """The ADF restricted to the true statements of the model `v`, with false
    statements replaced by falsum in the remaining conditions."""
    if not v.is_two_valued() or not holds(adf, v, "model"):
        raise ValueError("reduct is only defined for models")
    kept = v.true_set()
    falsum = {s: Bot() for s in adf.statements if v[s] is F}
    return AdfInstance(kept, {s: substitute(adf.conditions[s], falsum) for s in kept})


def _all_interpretations(statements, values=(U, F, T)):
    for combo in itertools.product(values, repeat=len(statements)):
        yield Interpretation(dict(zip(statements, combo)))


def maximal(items: list[Interpretation]) -> list[Interpretation]:
    """The <=_i-maximal elements of `items`."""
    # anything strictly above v decides more statements, so scanning in
    # decreasing order of decided statements only needs the maxima found so far
    def decided(v):
        return sum(x is not U for x in v.values())

    out: list[Interpretation] = []
    for v in sorted(set(items), key=decided, reverse=True):
        if not any(leq_i(v, w) for w in out):
            out.append(v)
    return out


def enumerate_adf(adf: AdfInstance, sigma: str) -> set[Interpretation]:
    if sigma not in ADF_SEMANTICS:
        raise ValueError(f"unknown semantics {sigma!r}")
    S = adf.statements
    if sigma == "grd":
        return {grounded(adf)}
    if sigma in ("mod", "stb"):
        models = [v for v in _all_interpretations(S, (F, T)) if holds(adf, v, "model")]
        if sigma == "mod":
            return set(models)
        return {v for v in models if grounded(reduct(adf, v)) == v.restrict(v.true_set())}
    adm = [v for v in _all_interpretations(S) if holds(adf, v, "adm")]
    if sigma == "adm":
        return set(adm)
    if sigma == "com":
        return {v for v in adm if holds(adf, v, "com")}
    return set(maximal(adm))


# -- GRAPPA -----------------------------------------------------------------------


def active_multiset(g: GrappaInstance, w: Interpretation, s: str) -> Counter:
    return Counter(g.edges[(r, s)] for r in g.parents(s) if w[r] is T)


def _numeric(labels, term: Term):
    bad = [lab for lab in labels if not isinstance(lab, int)]
    if bad:
        raise ValueError(f"{term.kind} over non-numeric label {bad[0]!r}")
    return labels


def eval_term(g: GrappaInstance, s: str, m: Counter, t: Term):
    """Value of term `t` at `s` under active-label multiset `m`.

    Empty min and max give +inf and -inf; empty sum and count give 0.
    ``sum`` adds every active label once per active edge carrying it.
    """
    if t.kind == "#":
        return m.get(t.label, 0)
    if t.kind == "#t":
        return sum(1 for lab in g.in_labels(s) if lab == t.label)
    if t.static:
        labels = list(g.in_labels(s))
        base = t.kind[:-1]
        if base == "count":
            return len(set(labels))
        active = labels
    else:
        if t.kind == "count":
            return sum(1 for lab, n in m.items() if n > 0)
        base = t.kind
        active = [lab for lab, n in m.items() for _ in range(n)]
    if t.kind in NUMERIC_TERMS:
        _numeric(active, t)
    if base == "sum":
        return sum(active)
    if base == "min":
        return min(active, default=INF)
    return max(active, default=-INF)


_RELS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


def eval_pattern(g: GrappaInstance, s: str, m: Counter, p: Pattern) -> bool:
    if isinstance(p, Basic):
        values = [(a, eval_term(g, s, m, t)) for a, t in p.coeffs]
        if any(math.isinf(x) for _, x in values):
            if len(values) != 1 or values[0][0] != 1:
                raise ValueError("an infinite term value may only stand alone with coefficient 1")
            total = values[0][1]
        else:
            total = sum(a * x for a, x in values)
        return _RELS[p.rel](total, p.bound)
    if isinstance(p, PNeg):
        return not eval_pattern(g, s, m, p.arg)
    if isinstance(p, PAnd):
        return eval_pattern(g, s, m, p.left) and eval_pattern(g, s, m, p.right)
    if isinstance(p, POr):
        return eval_pattern(g, s, m, p.left) or eval_pattern(g, s, m, p.right)
    raise TypeError(f"not a pattern: {p!r}")


def gamma_grappa(g: GrappaInstance, v: Interpretation) -> Interpretation:
    out = {}
    for s in g.statements:
        local = v.restrict(g.parents(s))
        p = g.patterns[s]
        out[s] = _decide(eval_pattern(g, s, active_multiset(g, w, s), p) for w in completions(local))
    return Interpretation(out)


def enumerate_grappa(g: GrappaInstance, sigma: str) -> set[Interpretation]:
    if sigma not in GRAPPA_SEMANTICS:
        raise ValueError(f"unknown GRAPPA semantics {sigma!r}")
    adm = []
    for v in _all_interpretations(g.statements):
        gv = gamma_grappa(g, v)
        if leq_i(v, gv):
            adm.append((v, gv))
    if sigma == "adm":
        return {v for v, _ in adm}
    if sigma == "com":
        return {v for v, gv in adm if v == gv}
    return set(maximal([v for v, _ in adm]))


def accepted(interpretations, s: str, mode: str) -> bool:
    """Credulous (some) or skeptical (all) acceptance of `s` among the given interpretations."""
    if mode == "cred":
        return any(v[s] is T for v in interpretations)
    if mode == "skept":
        return all(v[s] is T for v in interpretations)
    raise ValueError(f"unknown query mode {mode!r}")
