"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HomCalcError(Exception):
    """Base class; carries an optional machine-readable witness."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), "witness": self.witness}


class DimensionMismatch(HomCalcError):
    pass


class SingularMatrix(HomCalcError):
    pass


class DegreeCapExceeded(HomCalcError):
    pass


class AxiomFailure(HomCalcError):
    pass


class NotAutomorphism(HomCalcError):
    pass


class UnknownName(HomCalcError):
    pass


class BadParams(HomCalcError):
    pass


class NotRightHomIdeal(HomCalcError):
    pass


class NotInKerEps(HomCalcError):
    pass


class NotAlphaStable(HomCalcError):
    pass


class NotLeftCovariant(HomCalcError):
    pass


class NotRightCovariant(HomCalcError):
    pass


class NotBicovariant(HomCalcError):
    pass


class NotInTangentSpace(HomCalcError):
    pass


class InputError(HomCalcError):
    """Malformed structure-constant file or CLI argument."""
