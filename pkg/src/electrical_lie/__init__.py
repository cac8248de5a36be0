"""Exact structure constants and certificates for electrical Lie algebras of classical type."""

__version__ = "0.1.0"

from .dynkin import DynkinDiagram, cartan_matrix, diagram, positive_roots, root_decomposition
from .freelie import LieElement, bracket, electrical_relators, spanning_word, substitute
from .closure import StructureTable, certify_table, table_from_presentation, table_from_representation
from .reps import (
    Representation,
    evaluate,
    hom_B_to_AplusA,
    hom_C_into_D,
    odd_symplectic_membership,
    rep_A,
    rep_A_even,
    rep_B,
    rep_C,
    rep_C_gl,
    rep_C_scalar,
)
from .verify import Certificate, Weight, certify_dimension, weyl_dim_sp

__all__ = [
    "Certificate",
    "DynkinDiagram",
    "LieElement",
    "Representation",
    "StructureTable",
    "Weight",
    "bracket",
    "cartan_matrix",
    "certify_dimension",
    "certify_table",
    "diagram",
    "electrical_relators",
    "evaluate",
    "hom_B_to_AplusA",
    "hom_C_into_D",
    "odd_symplectic_membership",
    "positive_roots",
    "rep_A",
    "rep_A_even",
    "rep_B",
    "rep_C",
    "rep_C_gl",
    "rep_C_scalar",
    "root_decomposition",
    "spanning_word",
    "substitute",
    "table_from_presentation",
    "table_from_representation",
    "weyl_dim_sp",
]
