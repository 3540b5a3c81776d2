"""Orbits and bi-invariant subsets of binary G-spaces."""
from bispace.actions import (
    BinaryAction, Carrier, UnaryAction, conjugation_action_I, conjugation_action_II, induced_action,
    natural_g_square, table_action, verify_axioms,
)
from bispace.catalog import get as group
from bispace.groups import FiniteGroup, Subgroup, left_cosets, normalizer, subgroup_generated
from bispace.laws import (
    induced_distributivity_criterion, is_distributive, normalizer_criterion, problem1_counterexample,
)
from bispace.matrix import Mat2, MatrixGroup
from bispace.orbits import image_set, is_bi_invariant, orbit_layers, orbits_intersect
from bispace.words import DWord, growth_certificate, parse_word, symbolic_layers

__version__ = "0.1.0"

__all__ = [
    "BinaryAction", "Carrier", "DWord", "FiniteGroup", "Mat2", "MatrixGroup", "Subgroup", "UnaryAction",
    "conjugation_action_I", "conjugation_action_II", "group", "growth_certificate", "image_set",
    "induced_action", "induced_distributivity_criterion", "is_bi_invariant", "is_distributive",
    "left_cosets", "natural_g_square", "normalizer", "normalizer_criterion", "orbit_layers",
    "orbits_intersect", "parse_word", "problem1_counterexample", "subgroup_generated", "symbolic_layers",
    "table_action", "verify_axioms",
]
