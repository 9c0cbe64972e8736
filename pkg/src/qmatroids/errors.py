"""Exception taxonomy shared by all qmatroids modules."""

from __future__ import annotations


class QMatroidsError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------- fields

class NonPrimeCharacteristic(QMatroidsError):
    pass


class ReducibleModulus(QMatroidsError):
    pass


class NonPrimitiveModulus(QMatroidsError):
    pass


class NoDefaultModulus(QMatroidsError):
    pass


class FieldMismatch(QMatroidsError):
    pass


class DivisionByZero(QMatroidsError):
    pass


class ExtensionRequired(QMatroidsError):
    pass


class ExtensionTooSmall(QMatroidsError):
    pass


# ------------------------------------------------------------- subspaces

class AmbientMismatch(QMatroidsError):
    pass


class EnumerationCapExceeded(QMatroidsError):
    pass


# -------------------------------------------------------------- matroids

class BadRankBound(QMatroidsError):
    pass


class RankDeficientG(QMatroidsError):
    pass


class IncompleteTable(QMatroidsError):
    pass


class AxiomViolation(QMatroidsError):
    """Rank axiom failure.  Carries the axiom name and witness subspaces."""

    def __init__(self, axiom: str, witnesses, values=None):
        self.axiom = axiom
        self.witnesses = witnesses
        self.values = values
        super().__init__(f"rank axiom {axiom} violated at {witnesses!r} (values {values!r})")


class FlatAxiomViolation(QMatroidsError):
    """Flat axiom failure.  Carries the axiom name and a witness."""

    def __init__(self, axiom: str, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"flat axiom {axiom} violated at {witness!r}")


class SearchBoundExceeded(QMatroidsError):
    pass


class IndexNotInOmega(QMatroidsError):
    pass


# ------------------------------------------------------------------ maps

class NotAnLMap(QMatroidsError):
    """The map sends some subspace to a non-subspace.  Carries the witness."""

    def __init__(self, witness, message: str = ""):
        self.witness = witness
        super().__init__(message or f"image of {witness!r} is not a subspace")


class ZeroNotFixed(QMatroidsError):
    pass


class NotBijective(QMatroidsError):
    pass


# ---------------------------------------------------------------- dirsum

class TauNotMonotone(QMatroidsError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"oracle not monotone at {witness!r}")


class TauNotSubmodular(QMatroidsError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"oracle not submodular at {witness!r}")


class AlphaNotWeak(QMatroidsError):
    pass


class AlphaNotLinear(QMatroidsError):
    pass


# ------------------------------------------------------------------- cli

class ParseError(QMatroidsError):
    pass
