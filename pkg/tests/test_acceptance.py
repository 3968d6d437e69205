"""Acceptance suite: one group of tests per criterion.

Each group is tagged with ``@pytest.mark.criterion``; the terminal summary
prints a PASS/FAIL line per criterion (see conftest.py).
"""

import functools
import random
import subprocess
import sys
import time

import pytest
from adfasp import adf_encoder as enc
from adfasp.asp import max_arity, parse_program
from adfasp.core import Imp, Interpretation, Xor, desugar, eval2, leq_i, parents_of
from adfasp.generator import generate
from adfasp.grappa_encoder import encode_grappa
from adfasp.oracle import accepted, enumerate_adf, enumerate_grappa, maximal
from adfasp.parser import ParseError, format_adf, format_grappa, parse_adf, parse_grappa
from adfasp.solver import decide, solve
from hypothesis import given, settings
from hypothesis import strategies as st

from asp_diff import diff, drop_facts, expand_generators
from instances import random_adf, random_formula, random_grappa
from known import ABC, ABC_G, DATA, pick

ADF_SEEDS = range(200)
GRAPPA_SEEDS = range(100)
QUERY_SEEDS = range(40)
ADF_SIGMAS = ("adm", "com", "prf", "grd", "stb")
GRAPPA_SIGMAS = ("adm", "com", "prf")


@functools.cache
def adf_oracle(seed, sigma):
    return frozenset(enumerate_adf(random_adf(seed), sigma))


@functools.cache
def grappa_oracle(seed, sigma):
    return frozenset(enumerate_grappa(random_grappa(seed), sigma))


# -- 1. reproduction of the admissible table -------------------------------------

TABLE_EXPECTED = {
    "adm": list(ABC),
    "com": ["v6", "v7", "v8"],
    "prf": ["v7", "v8"],
    "grd": ["v6"],
    "stb": [],
}


@pytest.mark.criterion(1, "three-statement ADF via the CLI, each run < 5 s")
@pytest.mark.parametrize("sigma", ADF_SIGMAS)
def test_c1_table(sigma):
    start = time.monotonic()
    proc = subprocess.run(
        [sys.executable, "-m", "adfasp", f"-{sigma}", "--solve", str(DATA / "abc.adf")],
        capture_output=True,
        text=True,
    )
    elapsed = time.monotonic() - start
    expected = pick(ABC, *TABLE_EXPECTED[sigma])
    if expected:
        assert proc.returncode == 0, proc.stderr
        assert {Interpretation.parse(line) for line in proc.stdout.splitlines()} == expected
    else:
        assert proc.returncode == 1 and proc.stdout == "UNSATISFIABLE\n"
    assert elapsed < 5.0


# -- 2. golden listings ------------------------------------------------------------------


def _listing(name):
    return parse_program((DATA / name).read_text())


@pytest.mark.criterion(2, "golden adm/prf/stb listings up to renaming and order")
@pytest.mark.parametrize("sigma", ["adm", "prf"])
def test_c2_listings(abc, sigma):
    assert diff(enc.encode(abc, sigma), _listing(f"abc_{sigma}.lp")) == ([], [])


@pytest.mark.criterion(2, "golden adm/prf/stb listings up to renaming and order")
def test_c2_stb_listing(abc):
    gold = expand_generators(_listing("abc_stb.lp"))
    gold = drop_facts(gold, "prop", lambda t: t[2] in (0, 1) and t[3] in (0, 1))
    assert diff(enc.encode(abc, "stb"), gold) == ([], [])


# -- 3. GRAPPA example -----------------------------------------------------------------

GRAPPA_EXPECTED = {"adm": ["v1", "v2", "v3", "v4"], "com": ["v3", "v4"], "prf": ["v4"]}


@pytest.mark.criterion(3, "GRAPPA example via oracle and encodings")
@pytest.mark.parametrize("sigma", GRAPPA_SIGMAS)
def test_c3_grappa_example(abc_grappa, sigma):
    expected = pick(ABC_G, *GRAPPA_EXPECTED[sigma])
    assert enumerate_grappa(abc_grappa, sigma) == expected
    assert set(solve(encode_grappa(abc_grappa, sigma), abc_grappa.statements).distinct()) == expected


# -- 4. encodings agree with the oracle -------------------------------------------------


@pytest.mark.criterion(4, ">= 200 ADFs x 5 semantics, >= 100 GRAPPA x 3, zero mismatches")
def test_c4_adf_equivalence():
    assert len(ADF_SEEDS) >= 200
    mismatches = []
    for seed in ADF_SEEDS:
        adf = random_adf(seed)
        assert len(adf.statements) <= 7
        assert all(len(parents_of(f)) <= 4 for f in adf.conditions.values())
        for sigma in ADF_SIGMAS:
            got = set(solve(enc.encode(adf, sigma), adf.statements).distinct())
            if got != adf_oracle(seed, sigma):
                mismatches.append((seed, sigma))
    assert mismatches == []


@pytest.mark.criterion(4, ">= 200 ADFs x 5 semantics, >= 100 GRAPPA x 3, zero mismatches")
def test_c4_grappa_equivalence():
    assert len(GRAPPA_SEEDS) >= 100
    mismatches = []
    for seed in GRAPPA_SEEDS:
        g = random_grappa(seed)
        assert len(g.statements) <= 5
        for sigma in GRAPPA_SIGMAS:
            got = set(solve(encode_grappa(g, sigma), g.statements).distinct())
            if got != grappa_oracle(seed, sigma):
                mismatches.append((seed, sigma))
    assert mismatches == []


# -- 5. program shape ---------------------------------------------------------------------


def _generated(n, seed):
    rng = random.Random(seed)
    nodes = [f"n{i}" for i in range(n)]
    p = min(1.0, 3.0 / max(n, 1))
    edges = [(u, v) for u in nodes for v in nodes if rng.random() < p]
    return generate(edges, nodes, directed=bool(seed % 2), seed=seed)


@pytest.mark.criterion(5, "disjunction only in the second guess, arity <= 4 up to 50 statements")
@pytest.mark.parametrize("n", [1, 2, 5, 10, 20, 35, 50])
def test_c5_shape(n):
    guess2 = [r for r in enc.pi_guess2() if r.disjunctive]
    for seed in range(3):
        adf = _generated(n, seed)
        assert len(adf.statements) == n
        for sigma in ADF_SIGMAS:
            p = enc.encode(adf, sigma)
            disj = [r for r in p.rules if r.disjunctive]
            assert disj == (guess2 if sigma == "prf" else [])
            assert max_arity(p) <= 4
            q = enc.attach_query(p, "skept", adf.statements[0], adf.statements)
            assert max_arity(q) <= 4


# -- 6. invariants -------------------------------------------------------------------------


@pytest.mark.criterion(6, "lattice inclusions, desugar equivalence, parser round trip and fuzz")
def test_c6_adf_lattice():
    for seed in ADF_SEEDS:
        adf = random_adf(seed)
        adm, com, prf = (adf_oracle(seed, s) for s in ("adm", "com", "prf"))
        (grd,) = adf_oracle(seed, "grd")
        assert com <= adm
        assert prf == set(maximal(list(adm)))
        assert grd in com and all(leq_i(grd, v) for v in com)
        assert adf_oracle(seed, "stb") <= frozenset(enumerate_adf(adf, "mod"))
        assert Interpretation.all_undecided(adf.statements) in adm


@pytest.mark.criterion(6, "lattice inclusions, desugar equivalence, parser round trip and fuzz")
def test_c6_grappa_lattice():
    for seed in GRAPPA_SEEDS:
        g = random_grappa(seed)
        adm, com, prf = (grappa_oracle(seed, s) for s in GRAPPA_SIGMAS)
        assert com <= adm
        assert prf == set(maximal(list(adm)))
        assert Interpretation.all_undecided(g.statements) in adm


def _no_sugar(f):
    if isinstance(f, (Imp, Xor)):
        return False
    return all(_no_sugar(getattr(f, k)) for k in ("arg", "left", "right") if hasattr(f, k))


@pytest.mark.criterion(6, "lattice inclusions, desugar equivalence, parser round trip and fuzz")
def test_c6_desugar_exhaustive():
    from adfasp.core import TruthValue

    rng = random.Random(0)
    for n in range(0, 11):
        names = [f"x{i}" for i in range(n)]
        for _ in range(6):
            f = random_formula(rng, names, 6)
            g = desugar(f)
            assert _no_sugar(g)
            used = parents_of(f)
            for bits in range(2 ** len(used)):
                w = {x: TruthValue.T if bits >> k & 1 else TruthValue.F for k, x in enumerate(used)}
                assert eval2(f, w) == eval2(g, w)


@pytest.mark.criterion(6, "lattice inclusions, desugar equivalence, parser round trip and fuzz")
def test_c6_round_trip():
    for seed in ADF_SEEDS:
        adf = random_adf(seed)
        assert parse_adf(format_adf(adf)) == adf
    for seed in GRAPPA_SEEDS:
        g = random_grappa(seed)
        assert parse_grappa(format_grappa(g)) == g


@pytest.mark.criterion(6, "lattice inclusions, desugar equivalence, parser round trip and fuzz")
@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=200) | st.text(alphabet="s(a)c,.ndorimpxegtf# +-=<>&|!:0123\n", max_size=120))
def test_c6_fuzz(data):
    for parse in (parse_adf, parse_grappa):
        try:
            parse(data)
        except ParseError:
            pass


# -- 7. queries ------------------------------------------------------------------------------


@pytest.mark.criterion(7, "cred/skept agree with the oracle for adm/com/prf/stb")
def test_c7_queries():
    disagreements = []
    for seed in QUERY_SEEDS:
        adf = random_adf(seed)
        for sigma in ("adm", "com", "prf", "stb"):
            p = enc.encode(adf, sigma)
            for s in adf.statements:
                for mode in ("cred", "skept"):
                    got = decide(enc.attach_query(p, mode, s, adf.statements))
                    if got != accepted(adf_oracle(seed, sigma), s, mode):
                        disagreements.append((seed, sigma, s, mode))
    assert disagreements == []
