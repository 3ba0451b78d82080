"""Exact linear algebra, coisotropic modules and algebras, their Hochschild
complex and formal deformation theory over the rationals."""

from .algebra import (Algebra, CoisotropicAlgebra, center, derivations, inner_derivations, reduce_algebra,
                      reduced_derivation_map, validate_algebra)
from .hochschild import (Cochain, cochain_space, gerstenhaber_bracket, hochschild_cohomology,
                         hochschild_differential, reduction_comparison)
from .io import parse_algebra, parse_deformation
from .modules import CoisotropicComplex, CoisotropicModule, CoisotropicMorphism
from .series import TruncatedSeries

__all__ = [
    "Algebra", "CoisotropicAlgebra", "center", "derivations", "inner_derivations", "reduce_algebra",
    "reduced_derivation_map", "validate_algebra", "Cochain", "cochain_space", "gerstenhaber_bracket",
    "hochschild_cohomology", "hochschild_differential", "reduction_comparison", "parse_algebra",
    "parse_deformation", "CoisotropicComplex", "CoisotropicModule", "CoisotropicMorphism",
    "TruncatedSeries",
]
