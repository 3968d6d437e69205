"""Dynamic ASP encodings of the ADF semantics adm, com, prf, grd and stb.

Each program fragment has its own builder; ``encode_<sigma>`` composes them.
Truth values are ``1``, ``0`` and ``u`` inside the programs, and acceptance
conditions are evaluated arithmetically (``&``, ``?`` and ``1-``) over
0/1-valued variables standing for the parents of a statement.
"""

from __future__ import annotations

from .asp import (
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
from .core import AdfInstance, And, Bot, Formula, Neg, Or, Top, desugar
from .core import Var as FVar

S = Var("S")


class VarScheme:
    """Hands out fresh ASP variable names.

    All schemes derived from one another with `derive` share a counter, so
    names drawn for different subformula copies within one rule never clash.
    """

    def __init__(self, prefix: str = "V", start: int = 0, _counter: list[int] | None = None):
        self.prefix = prefix
        self._counter = _counter if _counter is not None else [start]

    def fresh(self) -> Var:
        name = f"{self.prefix}{self._counter[0]}"
        self._counter[0] += 1
        return Var(name)

    def derive(self, prefix: str) -> VarScheme:
        return VarScheme(prefix, _counter=self._counter)


def omega(f: Formula, vs: VarScheme, leaves: dict[str, Var]) -> tuple[list[Literal], Var]:
    """Arithmetic evaluation literals for a desugared formula.

    Variables map to the given leaf variables.  Every other node gets the
    next fresh name in postorder together with one defining comparison.
    """
    lits: list[Literal] = []

    def walk(g) -> Var:
        if isinstance(g, FVar):
            return leaves[g.name]
        if isinstance(g, (Top, Bot)):
            v = vs.fresh()
            lits.append(Compare(v, "=", Const(1 if isinstance(g, Top) else 0)))
            return v
        if isinstance(g, Neg):
            a = walk(g.arg)
            v = vs.fresh()
            lits.append(Compare(v, "=", BinOp("-", Const(1), a)))
            return v
        if isinstance(g, (And, Or)):
            a = walk(g.left)
            b = walk(g.right)
            v = vs.fresh()
            lits.append(Compare(v, "=", BinOp("&" if isinstance(g, And) else "?", a, b)))
            return v
        raise ValueError(f"formula must be desugared first: {g!r}")

    root = walk(f)
    return lits, root


def _leaf_scheme(parents: list[str], prefix: str = "V") -> tuple[VarScheme, dict[str, Var]]:
    vs = VarScheme(prefix)
    return vs, {t: vs.fresh() for t in parents}


def omega_body(adf: AdfInstance, s: str, asg: str = "asg") -> tuple[list[Literal], Var]:
    """Literals generating every completion of the parents of `s` and
    evaluating its condition; returns them with the root variable."""
    parents = adf.parents(s)
    vs, leaves = _leaf_scheme(parents)
    lits: list[Literal] = []
    for i, t in enumerate(parents):
        y = Var(f"Y{i}")
        lits.append(Pos(atom(asg, t, y)))
        lits.append(Pos(atom("leq", y, leaves[t])))
    body, root = omega(desugar(adf.conditions[s]), vs, leaves)
    return lits + body, root


# -- shared fragments -----------------------------------------------------------------


def pi_arg(statements) -> list[Rule]:
    return [fact("arg", s) for s in statements]


def pi_lt() -> list[Rule]:
    return [fact("leq", "u", 0), fact("leq", "u", 1), fact("leq", 0, 0), fact("leq", 1, 1)]


def _asg(pred, x):
    return Pos(atom(pred, S, x))


def pi_guess() -> list[Rule]:
    arg = Pos(atom("arg", S))
    return [
        Rule((atom("asg", S, "u"),), (arg, Not(atom("asg", S, 0)), Not(atom("asg", S, 1)))),
        Rule((atom("asg", S, 0),), (arg, Not(atom("asg", S, 1)), Not(atom("asg", S, "u")))),
        Rule((atom("asg", S, 1),), (arg, Not(atom("asg", S, "u")), Not(atom("asg", S, 0)))),
    ]


def pi_sat(adf: AdfInstance, asg="asg", sat="sat", inv="inv") -> list[Rule]:
    rules = []
    for head, value in ((sat, 1), (inv, 0)):
        for s in adf.statements:
            body, root = omega_body(adf, s, asg)
            rules.append(Rule((atom(head, s),), tuple(body) + (Compare(root, "=", Const(value)),)))
    return rules


def adm_constraints(sat="sat", inv="inv") -> list[Rule]:
    arg = Pos(atom("arg", S))
    return [
        Rule((), (arg, _asg("asg", 1), Pos(atom(inv, S)))),
        Rule((), (arg, _asg("asg", 0), Pos(atom(sat, S)))),
    ]


def com_constraints(sat="sat", inv="inv") -> list[Rule]:
    arg = Pos(atom("arg", S))
    return [
        Rule((), (arg, _asg("asg", "u"), Not(atom(inv, S)))),
        Rule((), (arg, _asg("asg", "u"), Not(atom(sat, S)))),
    ]


def pi_guess2() -> list[Rule]:
    return [
        Rule((atom("asg2", S, 0),), (_asg("asg", 0),)),
        Rule((atom("asg2", S, 1),), (_asg("asg", 1),)),
        Rule(
            (atom("asg2", S, 0), atom("asg2", S, 1), atom("asg2", S, "u")),
            (_asg("asg", "u"),),
        ),
    ]


def pi_check(statements, sat2="sat2", inv2="inv2") -> list[Rule]:
    ident: list[Literal] = []
    for i, s in enumerate(statements):
        x = Var(f"X{i}")
        ident += [Pos(atom("asg", s, x)), Pos(atom("asg2", s, x))]
    arg = Pos(atom("arg", S))
    return [
        Rule((atom("saturate"),), tuple(ident)),
        Rule((atom("saturate"),), (arg, _asg("asg2", 0), Pos(atom(sat2, S)))),
        Rule((atom("saturate"),), (arg, _asg("asg2", 1), Pos(atom(inv2, S)))),
    ]


def pi_saturate(sat2="sat2", inv2="inv2") -> list[Rule]:
    sat = Pos(atom("saturate"))
    arg = Pos(atom("arg", S))
    return [
        Rule((atom("asg2", S, "u"),), (_asg("asg", "u"), sat)),
        Rule((atom("asg2", S, 0),), (_asg("asg", "u"), sat)),
        Rule((atom("asg2", S, 1),), (_asg("asg", "u"), sat)),
        Rule((atom(sat2, S),), (arg, sat)),
        Rule((atom(inv2, S),), (arg, sat)),
    ]


def prf_extension(statements, sat2_rules: list[Rule], sat2="sat2", inv2="inv2") -> list[Rule]:
    """Everything the preferred encoding adds on top of the admissible one."""
    return (
        pi_guess2()
        + sat2_rules
        + pi_check(statements, sat2, inv2)
        + pi_saturate(sat2, inv2)
        + [Rule((), (Not(atom("saturate")),))]
    )


# -- per-semantics programs ------------------------------------------------------------


def encode_adm(adf: AdfInstance) -> AspProgram:
    return AspProgram(pi_arg(adf.statements) + pi_lt() + pi_guess() + pi_sat(adf) + adm_constraints())


def encode_com(adf: AdfInstance) -> AspProgram:
    return encode_adm(adf) + AspProgram(com_constraints())


def encode_prf(adf: AdfInstance) -> AspProgram:
    sat2 = pi_sat(adf, asg="asg2", sat="sat2", inv="inv2")
    return encode_adm(adf) + AspProgram(prf_extension(adf.statements, sat2))


def pi_lne() -> list[Rule]:
    return [
        fact("lne", 1, "u", 1),
        fact("lne", 1, "u", 0),
        fact("lne", 0, 1, 1),
        fact("lne", 0, 0, 0),
        fact("lne", 0, "u", "u"),
    ]


def pi_prop() -> list[Rule]:
    return [fact("prop", 1, 1, 1), fact("prop", 0, 0, 0), fact("prop", "u", 0, 1)]


def pi_ca() -> list[Rule]:
    arg = Pos(atom("arg", S))
    return [
        Rule((), (arg, _asg("asg", 1), Not(atom("sat", S)))),
        Rule((), (arg, _asg("asg", 0), Not(atom("inv", S)))),
    ] + com_constraints()


def _disjunction(statements) -> Formula:
    f: Formula = FVar(statements[-1])
    for s in reversed(statements[:-1]):
        f = Or(FVar(s), f)
    return f


def lambda_d(adf: AdfInstance, vs: VarScheme) -> list[Literal]:
    """Guess an interpretation strictly below the one in asg (via lne)."""
    lits: list[Literal] = []
    leaves = {}
    for i, s in enumerate(adf.statements):
        lits.append(Pos(atom("asg", s, Var(f"X{i}"))))
        lits.append(Pos(atom("lne", Var(f"E{i}"), Var(f"Y{i}"), Var(f"X{i}"))))
        leaves[s] = Var(f"E{i}")
    body, root = omega(_disjunction(list(adf.statements)), vs.derive("ED"), leaves)
    return lits + body + [Compare(root, "=", Const(1))]


def _copy(adf, s, vs, index, lt_lit):
    """One completion copy for statement `s`: leaf bindings, then evaluation."""
    leaves = {}
    lits: list[Literal] = []
    for t in adf.parents(s):
        v = vs.fresh()
        leaves[t] = v
        lits.append(lt_lit(index[t], v))
    body, root = omega(desugar(adf.conditions[s]), vs, leaves)
    return lits + body, root


def kappa(adf: AdfInstance, s: str, vs: VarScheme) -> list[Literal]:
    index = {t: i for i, t in enumerate(adf.statements)}

    def lt(i, v):
        return Pos(atom("leq", Var(f"Y{i}"), v))

    one, r1 = _copy(adf, s, vs, index, lt)
    two, r2 = _copy(adf, s, vs, index, lt)
    return one + two + [Pos(atom("prop", Var(f"Y{index[s]}"), r1, r2))]


def pi_cm(adf: AdfInstance, kappa_fn=kappa) -> list[Rule]:
    if not adf.statements:
        return []
    vs = VarScheme("V")
    body = lambda_d(adf, vs)
    for s in adf.statements:
        body += kappa_fn(adf, s, vs)
    return [Rule((atom("cm"),), tuple(body))]


def encode_grd(adf: AdfInstance) -> AspProgram:
    rules = (
        pi_arg(adf.statements)
        + pi_lt()
        + pi_lne()
        + pi_prop()
        + pi_guess()
        + pi_sat(adf)
        + pi_ca()
        + pi_cm(adf)
        + [Rule((), (Pos(atom("cm")),))]
    )
    return AspProgram(rules)


# -- stable -----------------------------------------------------------------------------


def pi_lt_stb() -> list[Rule]:
    tuples = [(1, "u", 0), (1, "u", 1), (1, 0, 0), (1, 1, 1), (0, "u", 0), (0, 0, 0), (0, 1, 0)]
    return [fact("lt2", *t) for t in tuples]


def pi_lne_stb() -> list[Rule]:
    return [
        fact("lne", 1, "u", 1),
        fact("lne", 0, "u", 0),
        fact("lne", 0, 1, 1),
        fact("lne", 0, 0, 0),
        fact("lne", 0, "u", "u"),
    ]


def pi_prop_stb() -> list[Rule]:
    tuples = [
        (1, 1, 1, 1), (1, 0, 0, 0), (1, "u", 0, 1), (1, "u", 1, 0),
        (0, 1, 0, 1), (0, 1, 1, 0), (0, 1, 0, 0),
        (0, 0, 0, 1), (0, 0, 1, 0), (0, 0, 1, 1),
        (0, "u", 0, 0), (0, "u", 1, 1),
    ]  # fmt: skip
    return [fact("prop", *t) for t in tuples]


def pi_guess_stb() -> list[Rule]:
    arg = Pos(atom("arg", S))
    return [
        Rule((atom("asg", S, 1),), (arg, Not(atom("asg", S, 0)))),
        Rule((atom("asg", S, 0),), (arg, Not(atom("asg", S, 1)))),
    ]


def pi_model(adf: AdfInstance) -> list[Rule]:
    rules = []
    for s in adf.statements:
        parents = adf.parents(s)
        vs, leaves = _leaf_scheme(parents)
        vs_s = leaves[s] if s in leaves else vs.fresh()
        body: list[Literal] = [Pos(atom("asg", s, vs_s))]
        body += [Pos(atom("asg", t, leaves[t])) for t in parents if t != s]
        lits, root = omega(desugar(adf.conditions[s]), vs, leaves)
        rules.append(Rule((), tuple(body + lits + [Compare(vs_s, "!=", root)])))
    return rules


def kappa_stb(adf: AdfInstance, s: str, vs: VarScheme) -> list[Literal]:
    index = {t: i for i, t in enumerate(adf.statements)}

    def lt(i, v):
        return Pos(atom("lt2", Var(f"X{i}"), Var(f"Y{i}"), v))

    i = index[s]
    one, r1 = _copy(adf, s, vs, index, lt)
    two, r2 = _copy(adf, s, vs, index, lt)
    p, cx, o = Var(f"P{i}"), Var(f"CX{i}"), vs.derive("OR").fresh()
    return one + two + [
        Pos(atom("prop", p, Var(f"Y{i}"), r1, r2)),
        Compare(cx, "=", BinOp("-", Const(1), Var(f"X{i}"))),
        Compare(o, "=", BinOp("?", p, cx)),
        Compare(o, "=", Const(1)),
    ]


def encode_stb(adf: AdfInstance) -> AspProgram:
    rules = (
        pi_arg(adf.statements)
        + pi_lt_stb()
        + pi_lne_stb()
        + pi_prop_stb()
        + pi_guess_stb()
        + pi_model(adf)
        + pi_cm(adf, kappa_stb)
        + [Rule((), (Pos(atom("cm")),))]
    )
    return AspProgram(rules)


ENCODERS = {
    "adm": encode_adm,
    "com": encode_com,
    "prf": encode_prf,
    "grd": encode_grd,
    "stb": encode_stb,
}


def encode(adf: AdfInstance, sigma: str) -> AspProgram:
    if sigma not in ENCODERS:
        raise ValueError(f"no ADF encoding for {sigma!r}")
    return ENCODERS[sigma](adf)


def attach_query(p: AspProgram, mode: str, s: str, statements) -> AspProgram:
    """Add the constraint turning an enumeration program into a query.

    Credulous acceptance holds iff the result is satisfiable, skeptical
    acceptance iff it is unsatisfiable.
    """
    if s not in set(statements):
        raise ValueError(f"unknown statement {s!r}")
    if mode == "cred":
        rule = Rule((), (Not(atom("asg", s, 1)),))
    elif mode == "skept":
        rule = Rule((), (Pos(atom("asg", s, 1)),))
    else:
        raise ValueError(f"unknown query mode {mode!r}")
    return AspProgram(p.rules + (rule,), (mode, s))


__all__ = [
    "VarScheme",
    "omega",
    "omega_body",
    "encode",
    "encode_adm",
    "encode_com",
    "encode_prf",
    "encode_grd",
    "encode_stb",
    "attach_query",
]
