"""Exact integral cohomology engine for the type-A Peterson variety.

The package realizes H*(Pet_n; Z) as Z[y_1..y_n]/(I + I'), multiplies classes
in the integral basis {pi_J} by explicit structure-constant rules, and
cross-validates the whole story against a brute-force graded-quotient oracle.
A toric module computes H*(Perm_n; Z) of the permutohedral variety together
with its S_n-invariant ranks.
"""

__version__ = "0.1.0"

from .combinat import SubsetJ, all_subsets, connected_components, m_factor
from .errors import VerificationError
from .intpoly import IntPoly, HookPartition, elementary_symmetric
from .ring import (PetClass, StructureConstantError, mult, mult_by_generator,
                   pi_to_polynomial, poincare_ranks, reduce_polynomial)
from .zlinalg import ZMatrix, ZQuotientStructure, smith_normal_form

__all__ = [
    "StructureConstantError",
    "VerificationError",
    "poincare_ranks",
    "IntPoly",
    "HookPartition",
    "elementary_symmetric",
    "SubsetJ",
    "all_subsets",
    "connected_components",
    "m_factor",
    "PetClass",
    "mult",
    "mult_by_generator",
    "pi_to_polynomial",
    "reduce_polynomial",
    "ZMatrix",
    "ZQuotientStructure",
    "smith_normal_form",
    "__version__",
]
