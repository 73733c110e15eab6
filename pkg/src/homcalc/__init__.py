"""Exact computations with monoidal Hom-Hopf algebras and their differential calculi."""

from .errors import HomCalcError
from .homstruct import HomHopfAlgebra, builtin, check_axioms, yau_twist

__all__ = ["HomCalcError", "HomHopfAlgebra", "builtin", "check_axioms", "yau_twist"]
__version__ = "0.1.0"
