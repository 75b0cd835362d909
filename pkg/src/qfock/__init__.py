"""Exact computation in higher-level q-deformed Fock spaces.

Straightening of q-wedge words, the bar involution, canonical bases and
q-decomposition matrices, plus checkers for the level-reduction theorems.
"""
from .canonical import (BarMatrix, DecompMatrix, EngineError, bar_matrix, canonical_basis,
                        verify_canonical)
from .combinatorics import (BlockSpec, Ordering, decode, dominance_compare, encode, enumerate_block,
                            join_index, split_index, wedge_compare)
from .fock import FockVector, bar_basis, bar_vector, choose_truncation
from .laurent import ONE, Q, ZERO, LaurentPoly
from .theorems import (QuotientSpace, check_theorem_A, check_theorem_B, quotient_canonical_basis)
from .wedge import normal_order, straighten_pair

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "ZERO", "ONE", "Q",
    "BlockSpec", "Ordering", "split_index", "join_index", "encode", "decode",
    "dominance_compare", "wedge_compare", "enumerate_block",
    "straighten_pair", "normal_order",
    "FockVector", "bar_basis", "bar_vector", "choose_truncation",
    "BarMatrix", "DecompMatrix", "EngineError", "bar_matrix", "canonical_basis", "verify_canonical",
    "QuotientSpace", "check_theorem_A", "check_theorem_B", "quotient_canonical_basis",
]
