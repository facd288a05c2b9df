"""Acyclic b-colourings of digraphs: verification, reduction, exact solvers and constructions."""
from __future__ import annotations

from .coloring import Coloring, VerificationReport, class_color_spread, is_acyclic_coloring, verify
from .digraph import Bipartition, Digraph, bipartition_of, build, enumerate_all, generate
from .exact import (
    HypothesisError,
    bounds,
    b_coloring_exists,
    exact_dc,
    exact_dib,
    theorem7_predicate,
    theorem8_predicates,
)
from .harness import CheckReport, CheckSpec, run_check
from .kernels import BACKEND
from .reduction import reduce_once, reduce_to_b_coloring

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Bipartition",
    "CheckReport",
    "CheckSpec",
    "Coloring",
    "Digraph",
    "HypothesisError",
    "VerificationReport",
    "b_coloring_exists",
    "bipartition_of",
    "bounds",
    "build",
    "class_color_spread",
    "enumerate_all",
    "exact_dc",
    "exact_dib",
    "generate",
    "is_acyclic_coloring",
    "reduce_once",
    "reduce_to_b_coloring",
    "run_check",
    "theorem7_predicate",
    "theorem8_predicates",
    "verify",
]
