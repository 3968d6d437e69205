"""Run emitted programs through an external clingo-style solver and decode.

The program text goes to the solver on standard input, optionally through a
rule-decomposition preprocessor first (``yadf ... | lpopt | clingo``).
Output is read in the ``Answer: N`` block format and each block is mapped
back to an interpretation via its ``asg(s,x)`` atoms.
"""

from __future__ import annotations

import os
import re
import shlex
import shutil
import subprocess
import sys
from dataclasses import dataclass, field

from .asp import AspProgram, render
from .core import Interpretation, TruthValue
from .decompose import decompose

SAT, UNSAT, ERROR, TIMEOUT = "SAT", "UNSAT", "ERROR", "TIMEOUT"


class SolverError(RuntimeError):
    pass


def default_solver() -> list[str]:
    """$ADFASP_SOLVER if set, else clingo on PATH, else the clingo Python module."""
    env = os.environ.get("ADFASP_SOLVER")
    if env:
        return shlex.split(env)
    exe = shutil.which("clingo")
    if exe:
        return [exe]
    return [sys.executable, "-m", "clingo"]


def _command(cmd) -> list[str]:
    if cmd is None:
        return default_solver()
    if isinstance(cmd, str):
        return shlex.split(cmd)
    return list(cmd)


@dataclass
class SolverConfig:
    solver: str | list[str] | None = None
    preprocessor: str | list[str] | None = None
    max_models: int = 0
    time_limit: float | None = None
    # in-process rule decomposition, used when no external preprocessor is given
    decompose: bool = True


@dataclass
class RunResult:
    text: str
    exit_class: str
    returncode: int
    stderr: str = ""


@dataclass
class AnswerSetReport:
    satisfiable: bool
    interpretations: list[Interpretation] = field(default_factory=list)
    raw_atom_sets: list[list[str]] = field(default_factory=list)
    exit_class: str = SAT

    def distinct(self) -> list[Interpretation]:
        """Interpretations with duplicates removed, first occurrence kept."""
        return list(dict.fromkeys(self.interpretations))


def _classify(returncode: int, text: str, stderr: str = "") -> str:
    # clingo exits with 10/20/30 (SAT/UNSAT/SAT exhausted); the Python module
    # always exits 0, so the status line decides in that case
    if returncode in (10, 30):
        return SAT
    if returncode == 20:
        return UNSAT
    if returncode != 0 or "*** ERROR" in stderr:
        return ERROR
    lines = [ln.strip() for ln in text.splitlines()]
    if "UNKNOWN" in lines:
        return TIMEOUT
    if "UNSATISFIABLE" in lines:
        return UNSAT
    if "SATISFIABLE" in lines:
        return SAT
    return ERROR


def run(p: AspProgram | str, cfg: SolverConfig | None = None) -> RunResult:
    cfg = cfg or SolverConfig()
    if isinstance(p, AspProgram) and cfg.decompose and cfg.preprocessor is None:
        p = decompose(p)
    text = p if isinstance(p, str) else render(p)
    solver = _command(cfg.solver) + [str(cfg.max_models)]
    if cfg.time_limit:
        solver.append(f"--time-limit={int(max(1, cfg.time_limit))}")
    try:
        if cfg.preprocessor is not None:
            pre = subprocess.run(
                _command(cfg.preprocessor),
                input=text,
                capture_output=True,
                text=True,
                timeout=cfg.time_limit,
            )
            if pre.returncode != 0:
                raise SolverError(f"preprocessor failed ({pre.returncode}): {pre.stderr.strip()}")
            text = pre.stdout
        proc = subprocess.run(
            solver, input=text, capture_output=True, text=True, timeout=cfg.time_limit
        )
    except FileNotFoundError as exc:
        raise SolverError(f"cannot start {exc.filename}") from None
    except subprocess.TimeoutExpired:
        return RunResult("", TIMEOUT, -1)
    return RunResult(proc.stdout, _classify(proc.returncode, proc.stdout, proc.stderr), proc.returncode, proc.stderr)


_ASG = re.compile(r"asg\(([a-z][A-Za-z0-9_]*),(0|1|u)\)\Z")


def decode(raw: str | RunResult, statements) -> AnswerSetReport:
    """Answer sets in `raw` as interpretations over `statements`.

    Only ``asg/2`` atoms are read; everything else in a block is ignored.
    """
    if isinstance(raw, RunResult):
        exit_class, raw = raw.exit_class, raw.text
    else:
        exit_class = _classify(0, raw)
    statements = list(statements)
    known = set(statements)
    lines = raw.splitlines()
    blocks: list[list[str]] = []
    i = 0
    while i < len(lines):
        if lines[i].startswith("Answer:"):
            if i + 1 >= len(lines):
                raise SolverError("answer header without atoms")
            nxt = lines[i + 1].strip()
            if nxt.startswith("Answer:") or nxt in ("SATISFIABLE", "UNSATISFIABLE", "UNKNOWN"):
                blocks.append([])
                i += 1
            else:
                blocks.append(nxt.split())
                i += 2
        else:
            i += 1
    interpretations = []
    for atoms in blocks:
        seen: dict[str, TruthValue] = {}
        for a in atoms:
            m = _ASG.match(a)
            if not m:
                continue
            s, x = m.group(1), TruthValue.from_asp(m.group(2))
            if s not in known:
                raise SolverError(f"asg for unknown statement {s}")
            if s in seen and seen[s] is not x:
                raise SolverError(f"conflicting values for {s} in one answer set")
            seen[s] = x
        missing = [s for s in statements if s not in seen]
        if missing:
            raise SolverError(f"no asg atom for {missing[0]} in an answer set")
        interpretations.append(Interpretation({s: seen[s] for s in statements}))
    satisfiable = exit_class == SAT if exit_class in (SAT, UNSAT) else bool(blocks)
    if exit_class == UNSAT and blocks:
        raise SolverError("answer sets reported for an unsatisfiable program")
    return AnswerSetReport(satisfiable, interpretations, blocks, exit_class)


def solve(p: AspProgram, statements, cfg: SolverConfig | None = None) -> AnswerSetReport:
    res = run(p, cfg)
    if res.exit_class in (ERROR, TIMEOUT):
        raise SolverError(f"solver {res.exit_class.lower()}: {res.stderr.strip()[:500]}")
    return decode(res, statements)


def decide(p: AspProgram, cfg: SolverConfig | None = None) -> bool:
    """Answer the query attached to `p` (credulous: SAT, skeptical: UNSAT)."""
    if p.query is None:
        raise ValueError("program has no attached query")
    cfg = cfg or SolverConfig()
    capped = SolverConfig(cfg.solver, cfg.preprocessor, 1, cfg.time_limit, cfg.decompose)
    res = run(p, capped)
    if res.exit_class in (ERROR, TIMEOUT):
        raise SolverError(f"solver {res.exit_class.lower()}: {res.stderr.strip()[:500]}")
    sat = res.exit_class == SAT
    return sat if p.query[0] == "cred" else not sat
