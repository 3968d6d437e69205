"""ADF and GRAPPA argumentation semantics compiled to answer set programs."""

from .adf_encoder import attach_query, encode, encode_adm, encode_com, encode_grd, encode_prf, encode_stb
from .asp import AspProgram, max_arity, parse_program, render
from .core import (
    AdfInstance,
    GrappaInstance,
    Interpretation,
    TruthValue,
    completions,
    desugar,
    eval2,
    leq_i,
    parents_of,
)
from .generator import generate, read_graph
from .grappa_encoder import encode_grappa
from .oracle import enumerate_adf, enumerate_grappa, gamma_adf, gamma_grappa, grounded
from .parser import ParseError, format_adf, format_grappa, parse_adf, parse_grappa
from .solver import AnswerSetReport, SolverConfig, decide, decode, solve

__version__ = "0.1.0"

__all__ = [
    "AdfInstance",
    "AnswerSetReport",
    "AspProgram",
    "GrappaInstance",
    "Interpretation",
    "ParseError",
    "SolverConfig",
    "TruthValue",
    "attach_query",
    "completions",
    "decide",
    "decode",
    "desugar",
    "encode",
    "encode_adm",
    "encode_com",
    "encode_grappa",
    "encode_grd",
    "encode_prf",
    "encode_stb",
    "enumerate_adf",
    "enumerate_grappa",
    "eval2",
    "format_adf",
    "format_grappa",
    "gamma_adf",
    "gamma_grappa",
    "generate",
    "grounded",
    "leq_i",
    "max_arity",
    "parents_of",
    "parse_adf",
    "parse_grappa",
    "parse_program",
    "read_graph",
    "render",
    "solve",
]
