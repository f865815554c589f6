"""Exact rational computation of derivations, biderivations and commuting maps of Lie algebras."""

from .algebra import LieAlgebra, build_gl, build_simple, build_sl, verify_structure
from .biderivations import BilinearMap, biderivation_space
from .commuting import commuting_space
from .derivations import LinearMap, derivation_space
from .linalg import Fraction, RationalMatrix, nullspace
from .roots import RootSystemType, generate, verify_all_connected

__all__ = [
    "Fraction",
    "RationalMatrix",
    "nullspace",
    "RootSystemType",
    "generate",
    "verify_all_connected",
    "LieAlgebra",
    "build_simple",
    "build_gl",
    "build_sl",
    "verify_structure",
    "LinearMap",
    "derivation_space",
    "BilinearMap",
    "biderivation_space",
    "commuting_space",
]
