"""Dynamic encodings of admissible, complete and preferred GRAPPA semantics.

The programs share the guessing and saturation parts with the ADF
encodings.  Only the evaluation differs: each acceptance pattern is
compiled into aggregate literals over 0/1 variables ``Z_r`` that say
whether parent ``r`` is active in the completion at hand.
"""

from __future__ import annotations

from .adf_encoder import S, VarScheme, _asg, pi_arg, pi_guess, prf_extension
from .asp import (
    AggBind,
    AggElement,
    AspProgram,
    BinOp,
    Compare,
    Const,
    Literal,
    Not,
    Pos,
    Rule,
    Var,
    atom,
    fact,
)
from .core import NUMERIC_TERMS, Basic, GrappaInstance, PAnd, Pattern, PNeg, POr, Term
from .oracle import eval_term


class EncodeError(ValueError):
    pass


def z_var(r: str) -> Var:
    return Var(f"Z_{r}")


def _numeric_labels(g: GrappaInstance, s: str, t: Term, parents) -> None:
    for r in parents:
        lab = g.edges[(r, s)]
        if not isinstance(lab, int):
            raise EncodeError(f"{t.kind} at {s} over non-numeric label {lab!r}")


def term_atom(g: GrappaInstance, s: str, t: Term, var: Var) -> list[Literal]:
    """Literals binding `var` to the value of term `t` at statement `s`."""
    parents = g.parents(s)
    if t.kind in NUMERIC_TERMS:
        _numeric_labels(g, s, t, parents)
    if t.kind in ("min", "max", "mint", "maxt") and not parents:
        raise EncodeError(f"{t.kind} at {s} has no in-edges to range over")
    if t.kind == "#":
        elems = [AggElement((z_var(r), Const(r))) for r in parents if g.edges[(r, s)] == t.label]
        if not elems:
            return [Compare(var, "=", Const(0))]
        return [AggBind(var, "#sum", elems)]
    if t.static:
        return [Compare(var, "=", Const(eval_term(g, s, {}, t)))]
    if not parents:
        # sum and count over nothing
        return [Compare(var, "=", Const(0))]

    def active(r):
        return (Compare(z_var(r), "=", Const(1)),)

    if t.kind == "sum":
        elems = [AggElement((Const(g.edges[(r, s)]), Const(r)), active(r)) for r in parents]
    else:
        elems = [AggElement((Const(g.edges[(r, s)]),), active(r)) for r in parents]
    return [AggBind(var, "#" + t.kind, elems)]


def _chain(g, s, p: Basic, i: int) -> tuple[list[Literal], Var]:
    """The sum a_1*t_1 + ... + a_n*t_n as a chain of partial sums, tail first."""
    n = len(p.coeffs)
    active_inf = [t for _, t in p.coeffs if t.kind in ("min", "max")]
    if active_inf and (n != 1 or p.coeffs[0][0] != 1):
        raise EncodeError(f"min/max at {s} must stand alone with coefficient 1")
    lits: list[Literal] = []
    tail = None
    for j in range(n, 0, -1):
        a, t = p.coeffs[j - 1]
        vt = Var(f"Vbp{i}s{j}t")
        vj = Var(f"Vbp{i}s{j}")
        lits += term_atom(g, s, t, vt)
        scaled = vt if a == 1 else BinOp("*", Const(a), vt)
        lits.append(Compare(vj, "=", scaled if tail is None else BinOp("+", scaled, tail)))
        tail = vj
    return lits, tail


def pattern_body(g: GrappaInstance, s: str, p: Pattern, vs: VarScheme | None = None) -> tuple[list[Literal], Var]:
    """Literals evaluating pattern `p` at `s` to a 0/1 root variable."""
    vs = vs or VarScheme("Vn", start=1)
    chains: list[Literal] = []
    binds: list[Literal] = []
    logic: list[Literal] = []
    counter = [0]

    def walk(q, root=False) -> Var:
        if isinstance(q, Basic):
            counter[0] += 1
            i = counter[0]
            lits, total = _chain(g, s, q, i)
            chains.extend(lits)
            v = Var(f"Vbp{i}")
            cond = Compare(total, q.rel, Const(q.bound))
            binds.append(AggBind(v, "#sum", [AggElement((Const(1),), (cond,))]))
            return v
        if isinstance(q, PNeg):
            a = walk(q.arg)
            v = Var("Vp") if root else vs.fresh()
            logic.append(Compare(v, "=", BinOp("-", Const(1), a)))
            return v
        if isinstance(q, (PAnd, POr)):
            a = walk(q.left)
            b = walk(q.right)
            v = Var("Vp") if root else vs.fresh()
            logic.append(Compare(v, "=", BinOp("&" if isinstance(q, PAnd) else "?", a, b)))
            return v
        raise TypeError(f"not a pattern: {q!r}")

    root = walk(p, root=True)
    return chains + binds + logic, root


def omega_s(g: GrappaInstance, s: str, asg: str = "asg") -> tuple[list[Literal], Var]:
    lits: list[Literal] = []
    for r in g.parents(s):
        y = Var(f"Y_{r}")
        lits += [Pos(atom(asg, r, y)), Pos(atom("lt", y, z_var(r)))]
    body, root = pattern_body(g, s, g.patterns[s])
    return lits + body, root


def pi_lt() -> list[Rule]:
    return [fact("lt", "u", 0), fact("lt", "u", 1), fact("lt", 0, 0), fact("lt", 1, 1)]


def pi_sat(g: GrappaInstance, asg="asg", sat="sat", unsat="unsat") -> list[Rule]:
    rules = []
    for s in g.statements:
        body, root = omega_s(g, s, asg)
        for head, value in ((sat, 1), (unsat, 0)):
            rules.append(Rule((atom(head, s),), tuple(body) + (Compare(root, "=", Const(value)),)))
    return rules


def _constraints(sat, unsat, complete):
    arg = Pos(atom("arg", S))
    rules = [
        Rule((), (arg, _asg("asg", 1), Pos(atom(unsat, S)))),
        Rule((), (arg, _asg("asg", 0), Pos(atom(sat, S)))),
    ]
    if complete:
        rules += [
            Rule((), (arg, _asg("asg", "u"), Not(atom(unsat, S)))),
            Rule((), (arg, _asg("asg", "u"), Not(atom(sat, S)))),
        ]
    return rules


def encode_grappa(g: GrappaInstance, sigma: str) -> AspProgram:
    if sigma not in ("adm", "com", "prf"):
        raise ValueError(f"no GRAPPA encoding for {sigma!r}")
    rules = pi_arg(g.statements) + pi_lt() + pi_guess() + pi_sat(g) + _constraints("sat", "unsat", sigma == "com")
    if sigma == "prf":
        rules += prf_extension(g.statements, pi_sat(g, "asg2", "sat2", "unsat2"), "sat2", "unsat2")
    return AspProgram(rules)
