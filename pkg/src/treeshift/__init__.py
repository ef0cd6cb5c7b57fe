"""Weighted shifts on directed trees: per-vertex classification with a dense matrix cross-check."""

from .classify import (
    ClassificationReport,
    abc3_holds,
    c_optimal,
    generalized_c_optimal,
    hyponormal_sum,
    interior_vertices,
    is_hyponormal,
    is_quasinormal,
    sleu_identity_check,
)
from .measures import COLLAPSE, IDENTITY, AtomicMeasure, FunctionOnAtoms, psi_q
from .shift import WeightedShift
from .tree import DirectedTree, TreeError
from .treespec import TreeSpecError, export_dot, format_tree_spec, parse_tree_spec

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "COLLAPSE",
    "ClassificationReport",
    "DirectedTree",
    "FunctionOnAtoms",
    "IDENTITY",
    "TreeError",
    "TreeSpecError",
    "WeightedShift",
    "abc3_holds",
    "c_optimal",
    "export_dot",
    "format_tree_spec",
    "generalized_c_optimal",
    "hyponormal_sum",
    "interior_vertices",
    "is_hyponormal",
    "is_quasinormal",
    "parse_tree_spec",
    "psi_q",
    "sleu_identity_check",
]
