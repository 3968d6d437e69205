"""Seeded random ADF and GRAPPA instances for the property suites."""

from __future__ import annotations

import random

from adfasp.core import (
    RELATIONS,
    AdfInstance,
    And,
    Basic,
    Bot,
    GrappaInstance,
    Imp,
    Neg,
    Or,
    PAnd,
    PNeg,
    POr,
    Term,
    Top,
    Var,
    Xor,
)

BINARY = (And, Or, Imp, Xor)


def random_formula(rng: random.Random, parents: list[str], depth: int):
    if depth == 0 or rng.random() < 0.3:
        if not parents or rng.random() < 0.1:
            return Top() if rng.random() < 0.5 else Bot()
        return Var(rng.choice(parents))
    if rng.random() < 0.2:
        return Neg(random_formula(rng, parents, depth - 1))
    op = rng.choice(BINARY)
    return op(random_formula(rng, parents, depth - 1), random_formula(rng, parents, depth - 1))


def random_adf(seed: int, max_statements: int = 7, max_parents: int = 4, max_depth: int = 5) -> AdfInstance:
    rng = random.Random(seed)
    n = rng.randint(1, max_statements)
    statements = [f"s{i}" for i in range(n)]
    conditions = {}
    for s in statements:
        k = rng.randint(0, min(max_parents, n))
        parents = rng.sample(statements, k)
        conditions[s] = random_formula(rng, parents, rng.randint(0, max_depth))
    return AdfInstance(statements, conditions)


SYMBOLIC = ("+", "-")


def _random_term(rng, labels, numeric, has_parents):
    kinds = ["#", "#t", "count", "countt"]
    if numeric:
        kinds += ["sum", "sumt"]
        if has_parents:
            kinds += ["mint", "maxt"]
    kind = rng.choice(kinds)
    return Term(kind, rng.choice(labels) if kind in ("#", "#t") else None)


def _random_basic(rng, labels, numeric, has_parents):
    if numeric and has_parents and rng.random() < 0.15:
        # active min/max only alone with coefficient 1
        return Basic(((1, Term(rng.choice(("min", "max")))),), rng.choice(RELATIONS), rng.randint(-2, 2))
    coeffs = []
    for _ in range(rng.randint(1, 2)):
        a = rng.choice((-2, -1, 1, 1, 2))
        coeffs.append((a, _random_term(rng, labels, numeric, has_parents)))
    return Basic(tuple(coeffs), rng.choice(RELATIONS), rng.randint(-2, 3))


def random_pattern(rng, labels, numeric, has_parents, depth=2):
    if depth == 0 or rng.random() < 0.5:
        return _random_basic(rng, labels, numeric, has_parents)
    r = rng.random()
    if r < 0.2:
        return PNeg(random_pattern(rng, labels, numeric, has_parents, depth - 1))
    op = PAnd if r < 0.6 else POr
    return op(
        random_pattern(rng, labels, numeric, has_parents, depth - 1),
        random_pattern(rng, labels, numeric, has_parents, depth - 1),
    )


def random_grappa(seed: int, max_statements: int = 5, edge_prob: float = 0.4) -> GrappaInstance:
    rng = random.Random(seed)
    n = rng.randint(1, max_statements)
    statements = [f"s{i}" for i in range(n)]
    numeric = rng.random() < 0.5
    pool = list(range(-2, 3)) if numeric else list(SYMBOLIC)
    labels = rng.sample(pool, rng.randint(1, 2))
    edges = {}
    for u in statements:
        for v in statements:
            if rng.random() < edge_prob:
                edges[(u, v)] = rng.choice(labels)
    patterns = {}
    for s in statements:
        has_parents = any(v == s for _, v in edges)
        patterns[s] = random_pattern(rng, labels, numeric, has_parents)
    return GrappaInstance(statements, edges, patterns)
