"""
Random ADFs from graphs
=======================

Turns random directed graphs into ADFs with the group-based generator and
compares the number of preferred interpretations found by clingo with the
oracle while the graphs grow.  Seeds make the corpus reproducible.
"""

import random
import time

from adfasp import encode, enumerate_adf, format_adf, generate, max_arity, solve

rng = random.Random(42)
for n in (3, 5, 7):
    nodes = [f"n{i}" for i in range(n)]
    edges = [(u, v) for u in nodes for v in nodes if rng.random() < 0.3]
    adf = generate(edges, nodes, seed=n)
    if n == 3:
        print(format_adf(adf))
    program = encode(adf, "prf")
    start = time.monotonic()
    found = set(solve(program, adf.statements).distinct())
    took = time.monotonic() - start
    expected = enumerate_adf(adf, "prf")
    print(f"n={n}: {len(edges)} edges, {len(found)} preferred, oracle agrees: {found == expected}, "
          f"arity {max_arity(program)}, {took:.2f} s")
