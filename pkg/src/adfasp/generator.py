"""Graph-based random ADF generator.

Nodes of the input graph become statements and edges become links.  The
parents of each statement are spread over five groups, each group yields a
subformula, and the subformulas are joined by random conjunctions and
disjunctions:

=============  ==================================
attack         ``neg(s1) and ... and neg(sn)``
group-attack   ``neg(s1) or ... or neg(sn)``
support        ``s1 or ... or sn``
group-support  ``s1 and ... and sn``
xor            ``l1 xor ... xor ln``, each ``li`` is ``si`` or ``neg(si)``
=============  ==================================

An empty group becomes ``c(v)`` or ``c(f)``.  Groups are folded left to
right in the order of the table.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded with
the given integer.  Draws happen in this order: one or two per undirected
edge (symmetric link, then direction), then per statement one group draw per
parent, one draw per empty group or xor literal in group order, and finally
one draw per join.  Keeping that order fixed makes corpora reproducible.
"""

from __future__ import annotations

import argparse
import math
import random
import re
import sys

from .core import AdfInstance, And, Bot, Formula, Neg, Or, Top, Var, Xor, is_identifier
from .parser import format_adf

GROUPS = ("attack", "group-attack", "support", "group-support", "xor")


def _chain(op, items: list[Formula]) -> Formula:
    f = items[0]
    for g in items[1:]:
        f = op(f, g)
    return f


def _pick(rng: random.Random, probs) -> int:
    x = rng.random()
    acc = 0.0
    for i, p in enumerate(probs):
        acc += p
        if x < acc:
            return i
    return len(probs) - 1


def orient(edges, directed: bool, symmetric_prob: float, rng: random.Random) -> list[tuple[str, str]]:
    if directed:
        return list(edges)
    links = []
    for u, v in edges:
        if u == v:
            links.append((u, v))
        elif rng.random() < symmetric_prob:
            links += [(u, v), (v, u)]
        elif rng.random() < 0.5:
            links.append((u, v))
        else:
            links.append((v, u))
    return links


def generate(
    edges,
    nodes=None,
    directed: bool = True,
    symmetric_prob: float = 0.5,
    group_probs=(0.2, 0.2, 0.2, 0.2, 0.2),
    seed: int = 0,
) -> AdfInstance:
    """An ADF over the nodes of the graph whose links follow its edges."""
    group_probs = tuple(group_probs)
    if len(group_probs) != 5 or any(p < 0 for p in group_probs) or not math.isclose(sum(group_probs), 1.0):
        raise ValueError("group_probs must be five non-negative numbers summing to 1")
    if not 0.0 <= symmetric_prob <= 1.0:
        raise ValueError("symmetric_prob must lie in [0, 1]")
    order: dict[str, None] = dict.fromkeys(nodes or ())
    for e in edges:
        if len(e) != 2:
            raise ValueError(f"malformed edge {e!r}")
        order.update(dict.fromkeys(e))
    for n in order:
        if not is_identifier(n):
            raise ValueError(f"node {n!r} is not a valid statement name")
    rng = random.Random(seed)
    links = set(orient(edges, directed, symmetric_prob, rng))
    statements = list(order)
    conditions = {}
    for s in statements:
        parents = [t for t in statements if (t, s) in links]
        groups: list[list[str]] = [[] for _ in GROUPS]
        for t in parents:
            groups[_pick(rng, group_probs)].append(t)
        parts: list[Formula] = []
        for k, members in enumerate(groups):
            if not members:
                parts.append(Top() if rng.random() < 0.5 else Bot())
                continue
            pos = [Var(t) for t in members]
            if k == 0:
                parts.append(_chain(And, [Neg(v) for v in pos]))
            elif k == 1:
                parts.append(_chain(Or, [Neg(v) for v in pos]))
            elif k == 2:
                parts.append(_chain(Or, pos))
            elif k == 3:
                parts.append(_chain(And, pos))
            else:
                parts.append(_chain(Xor, [Neg(v) if rng.random() < 0.5 else v for v in pos]))
        f = parts[0]
        for g in parts[1:]:
            f = And(f, g) if rng.random() < 0.5 else Or(f, g)
        conditions[s] = f
    return AdfInstance(tuple(statements), conditions)


def node_name(token: str) -> str:
    """Map a graph node label to a statement name (``s`` prefix if needed)."""
    if is_identifier(token):
        return token
    name = "s" + re.sub(r"[^A-Za-z0-9_]", "_", token)
    if not is_identifier(name):
        raise ValueError(f"cannot turn node {token!r} into a statement name")
    return name


def read_graph(text: str) -> tuple[list[str], list[tuple[str, str]]]:
    """Parse ``u v`` edge lines (a single token declares an isolated node).

    Blank lines and lines starting with ``#`` or ``%`` are skipped.
    """
    nodes: dict[str, None] = {}
    edges = []
    seen_raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line[0] in "#%":
            continue
        toks = line.split()
        if len(toks) > 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        names = []
        for tok in toks:
            name = node_name(tok)
            if seen_raw.setdefault(name, tok) != tok:
                raise ValueError(f"line {lineno}: nodes {seen_raw[name]!r} and {tok!r} collide as {name}")
            names.append(name)
            nodes.setdefault(name)
        if len(names) == 2:
            edges.append((names[0], names[1]))
    return list(nodes), edges


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="adfasp-generate", description="Generate an ADF from a graph of 'u v' lines.")
    p.add_argument("graph", help="edge list file, or - for standard input")
    p.add_argument("--undirected", action="store_true", help="treat edges as undirected")
    p.add_argument("--symmetric-prob", type=float, default=0.5, help="chance an undirected edge becomes two links")
    p.add_argument("--group-probs", type=float, nargs=5, default=[0.2] * 5, metavar="P")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    text = sys.stdin.read() if args.graph == "-" else open(args.graph).read()
    try:
        nodes, edges = read_graph(text)
        adf = generate(edges, nodes, not args.undirected, args.symmetric_prob, args.group_probs, args.seed)
    except ValueError as exc:
        print(f"adfasp-generate: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(format_adf(adf))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
