"""Exact computations with finite k-graphs and their Toeplitz k-graphs."""

from .analysis import (
    MinPair,
    aperiodicity_witness,
    check_aperiodic,
    exhaustive_sets,
    is_exhaustive,
    is_locally_convex,
    is_source,
    lambda_min,
    mce,
)
from .core import Edge, KGraph, MultiDegree, Path, Skeleton, Square, make_kgraph, validate
from .errors import KGraphError
from .kgf import export_dot, format_kgf, parse_kgf
from .representations import (
    OperatorFamily,
    boundary_family,
    check_ck,
    check_condition_star,
    check_tck,
    fock_family,
    induced_ck_family,
    induced_toeplitz_family,
    span_dimension,
    verify_isomorphism,
)
from .sparse import SparseIntMatrix, rank
from .tlambda import TConstruction, TaggedPath, alpha, beta, build_tlambda, structure_report

__all__ = [
    "Edge", "KGraph", "KGraphError", "MinPair", "MultiDegree", "OperatorFamily", "Path", "Skeleton",
    "SparseIntMatrix", "Square", "TConstruction", "TaggedPath", "alpha", "aperiodicity_witness", "beta",
    "boundary_family", "build_tlambda", "check_aperiodic", "check_ck", "check_condition_star", "check_tck",
    "exhaustive_sets", "export_dot", "fock_family", "format_kgf", "induced_ck_family",
    "induced_toeplitz_family", "is_exhaustive", "is_locally_convex", "is_source", "lambda_min",
    "make_kgraph", "mce", "parse_kgf", "rank", "span_dimension", "structure_report", "validate",
    "verify_isomorphism",
]
