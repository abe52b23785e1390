"""Exact factorization invariants of quaternion orders over Z localized at p.

Eichler orders in the 2x2 matrix algebra get a full atom classification,
canonical right associates, factorization enumeration, sets of lengths,
distance sets, elasticities and catenary degrees; local orders presented as
even Clifford algebras of ternary quadratic forms get radical
classification, nilpotent elements and long atom families.  All arithmetic
is exact.
"""

from .dvr import INFINITY, DvrConfig, DvrElement, ResidueClass
from .eichler import AtomClassTag, EichlerOrder, EichlerProvider, Mat2
from .clifford import C0Element, ResidueForm, TernaryForm
from .factorize import (
    LengthProfile,
    RigidFactorization,
    catenary_degree,
    count_factorizations,
    elasticity_formulas,
    enumerate_factorizations,
    length_profile,
    rigid_distance,
    scan_atom_norm_valuations,
)
from .verify import VerifyConfig, run_verification

__all__ = [
    "INFINITY",
    "DvrConfig",
    "DvrElement",
    "ResidueClass",
    "AtomClassTag",
    "EichlerOrder",
    "EichlerProvider",
    "Mat2",
    "C0Element",
    "ResidueForm",
    "TernaryForm",
    "LengthProfile",
    "RigidFactorization",
    "catenary_degree",
    "count_factorizations",
    "elasticity_formulas",
    "enumerate_factorizations",
    "length_profile",
    "rigid_distance",
    "scan_atom_norm_valuations",
    "VerifyConfig",
    "run_verification",
]
