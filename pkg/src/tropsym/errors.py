"""Exception hierarchy.

Every domain error carries a stable ``code`` (the class name) and an optional
``details`` mapping that the CLI serializes verbatim.
"""

from __future__ import annotations

from typing import Any


class TropsymError(ValueError):
    """Base class for all domain errors raised by this package."""

    exit_code = 4

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(TropsymError):
    """Malformed JSON input or an unparseable scalar."""

    exit_code = 3


class BaseMismatch(TropsymError):
    pass


# -- curves -----------------------------------------------------------------

class CurveError(TropsymError):
    pass


class DuplicateId(CurveError):
    pass


class UnknownVertex(CurveError):
    pass


class BadLength(CurveError):
    pass


class BadMultiplicity(CurveError):
    pass


class EmptyCurve(CurveError):
    pass


class Disconnected(CurveError):
    pass


class FiniteLeaf(CurveError):
    pass


class InfiniteInnerEdge(CurveError):
    pass


class BadInfinitePoint(CurveError):
    pass


class MultiplicityMismatchAt2Valent(CurveError):
    pass


class BadCircleMultiplicity(CurveError):
    pass


class UnknownPoint(CurveError):
    pass


# -- functions ----------------------------------------------------------------

class EvalAtInfinitePoint(TropsymError):
    pass


class NonIntegerSlope(TropsymError):
    pass


class ModeMismatch(TropsymError):
    pass


# -- automorphisms ------------------------------------------------------------

class NotAutomorphism(TropsymError):
    pass


class InfiniteAutGroup(TropsymError):
    pass


class NotClosed(TropsymError):
    pass


class MissingIdentity(TropsymError):
    pass


# -- principal divisors -------------------------------------------------------

class DegreeNonzero(TropsymError):
    pass


class NotPrincipal(TropsymError):
    def __init__(self, message: str, certificate: Any) -> None:
        super().__init__(message, certificate=certificate)
        self.certificate = certificate


class NotInvariantDivisor(TropsymError):
    pass


# -- cohomology ---------------------------------------------------------------

class NotACocycle(TropsymError):
    pass


class WellDefinednessViolation(TropsymError):
    pass


class NotInvariantClass(TropsymError):
    def __init__(self, message: str, element: int, certificate: Any) -> None:
        super().__init__(message, element=element, certificate=certificate)
        self.element = element
        self.certificate = certificate
