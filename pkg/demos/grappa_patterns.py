"""
GRAPPA: acceptance patterns over labelled edges
===============================================

A GRAPPA instance labels its edges and states one pattern per node.
Here every node is accepted when all of its ``+`` parents are active and
no ``-`` parent is.  The script evaluates the semantics with the oracle
and, when clingo is installed, with the aggregate-based encoding.
"""

from adfasp import encode_grappa, enumerate_grappa, parse_grappa, solve
from adfasp.solver import SolverError

g = parse_grappa(
    """
    s(a). s(b). s(c).
    e(a,b,+). e(b,b,-). e(c,b,+). e(b,c,+).
    pat(a, "#t(+) - #(+) = 0 && #(-) = 0").
    pat(b, "#t(+) - #(+) = 0 && #(-) = 0").
    pat(c, "#t(+) - #(+) = 0 && #(-) = 0").
    """
)
print("parents of b:", g.parents("b"))

for sigma in ("adm", "com", "prf"):
    print(sigma, sorted(str(v) for v in enumerate_grappa(g, sigma)))

try:
    for sigma in ("adm", "com", "prf"):
        report = solve(encode_grappa(g, sigma), g.statements)
        print(sigma, "via ASP:", sorted(str(v) for v in report.distinct()))
except SolverError as exc:
    print("skipping the ASP run:", exc)
