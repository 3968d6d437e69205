"""
From ADF to answer set program and back
=======================================

Prints the admissible encoding of an ADF, runs clingo on the preferred
encoding, and asks a credulous and a skeptical query.  Needs clingo
(``pip install clingo``).
"""

from adfasp import attach_query, decide, encode, parse_adf, render, solve

adf = parse_adf("s(a). s(b). s(c). ac(a,or(neg(b),b)). ac(b,b). ac(c,imp(c,b)).")

# the admissible program: a guess over u/0/1 per statement plus one
# pair of sat/inv rules per acceptance condition
print(render(encode(adf, "adm")))

# answer sets are projected onto asg/2 and decoded into interpretations
report = solve(encode(adf, "prf"), adf.statements)
print("preferred:", [str(v) for v in report.distinct()])

# a query appends one constraint; credulous asks for a witness,
# skeptical asks that no counterexample exists
prf = encode(adf, "prf")
for mode, s in (("cred", "c"), ("skept", "a"), ("skept", "c")):
    answer = decide(attach_query(prf, mode, s, adf.statements))
    print(f"{mode} prf {s}: {'yes' if answer else 'no'}")
