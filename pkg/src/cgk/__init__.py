"""Finite group actions on directed graphs: crossed-product decomposition,
character tables, graph-algebra K-theory, and an exact brute-force verifier."""

from .chartab import CharTable, ClassFunction, character_table, dr_matrix, inner_product, perm_character
from .decomp import CorrGraph, blocks_label, corr_graph, dimension_audit, skeleton, vertex_algebra_summary
from .errors import CgkError
from .exact import CycInt, IntMatrix, coker_ker, snf
from .fingroup import Perm, PermGroup, close
from .gactgraph import Cocycle, Graph, GroupAction, is_free, quotient_graph, skew_product, validate_action
from .ktheory import KTheory, dim_group, graph_algebra_props, graph_k_theory, vertex_matrix
from .oracle import oracle_multiplicities
from .problem import emit_dot, load_problem, parse_problem

__version__ = "0.1.0"

__all__ = [
    "CgkError",
    "CharTable",
    "ClassFunction",
    "Cocycle",
    "CorrGraph",
    "CycInt",
    "Graph",
    "GroupAction",
    "IntMatrix",
    "KTheory",
    "Perm",
    "PermGroup",
    "blocks_label",
    "character_table",
    "close",
    "coker_ker",
    "corr_graph",
    "dim_group",
    "dimension_audit",
    "dr_matrix",
    "emit_dot",
    "graph_algebra_props",
    "graph_k_theory",
    "inner_product",
    "is_free",
    "load_problem",
    "oracle_multiplicities",
    "parse_problem",
    "perm_character",
    "quotient_graph",
    "skeleton",
    "skew_product",
    "snf",
    "validate_action",
    "vertex_algebra_summary",
    "vertex_matrix",
]
