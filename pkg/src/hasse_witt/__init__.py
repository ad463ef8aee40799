"""Hasse-Witt matrices of hyperelliptic curves y^2 = f(x) over Q.

Computes W_p at every good prime p <= N with accumulating remainder forests,
or at a single prime with a linear scan, and derives zeta-function data.
"""

from .curve import CurveData, PrimeKind, PrimeStatus, classify_primes, normalize
from .driver import compute_matrices, compute_matrix_single
from .firstrow import batch_interleaved, compute_first_row_single, compute_first_rows
from .modarith import direct_expansion_matrix, legendre, mod_inverse
from .records import HasseWittMatrix, HasseWittRow, Provenance
from .reconstruct import reconstruct_matrix, translation_matrix
from .remtree import remainder_forest, remainder_tree, scalar_remainder_forest
from .zeta import ZetaRecord, a1_histogram, lift_trace, lpoly_modp, zeta_record

__all__ = [
    "CurveData",
    "HasseWittMatrix",
    "HasseWittRow",
    "PrimeKind",
    "PrimeStatus",
    "Provenance",
    "ZetaRecord",
    "a1_histogram",
    "batch_interleaved",
    "classify_primes",
    "compute_first_row_single",
    "compute_first_rows",
    "compute_matrices",
    "compute_matrix_single",
    "direct_expansion_matrix",
    "legendre",
    "lift_trace",
    "lpoly_modp",
    "mod_inverse",
    "normalize",
    "reconstruct_matrix",
    "remainder_forest",
    "remainder_tree",
    "scalar_remainder_forest",
    "translation_matrix",
    "zeta_record",
]
