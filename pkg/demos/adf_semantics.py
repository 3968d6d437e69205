"""
Three-valued semantics of a small ADF
=====================================

Builds a three-statement ADF by hand, applies the characteristic operator,
and lists every semantics with the brute-force reference implementation.
No solver is needed for this script.
"""

from adfasp import Interpretation, enumerate_adf, gamma_adf, grounded, parse_adf

# statements a, b, c; a is always acceptable, b supports itself and
# c needs b whenever c holds
adf = parse_adf(
    """
    s(a). s(b). s(c).
    ac(a, or(neg(b), b)).
    ac(b, b).
    ac(c, imp(c, b)).
    """
)
print("statements:", adf.statements)

# one application of the operator to the all-undecided interpretation:
# a's condition is a tautology, so a becomes true
v = Interpretation.all_undecided(adf.statements)
print("gamma(", v, ") =", gamma_adf(adf, v))

# the grounded interpretation is the least fixpoint of that operator
print("grounded:", grounded(adf))

# admissible interpretations are ordered by information; the preferred ones
# sit at the top and there is no stable model at all
for sigma in ("adm", "com", "prf", "grd", "mod", "stb"):
    found = sorted(str(x) for x in enumerate_adf(adf, sigma))
    print(f"{sigma}: {found if found else 'none'}")
