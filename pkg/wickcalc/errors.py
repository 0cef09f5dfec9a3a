"""Exception hierarchy for the Wick engine.

Every error derives from ``ValueError`` as well as from ``WickError`` so that
callers who only care about "bad input" can catch the builtin.
"""
from typing import Optional


class WickError(ValueError):
    """Base class for all errors raised by wickcalc."""


# Algebra

class AlgebraError(WickError):
    """Malformed operator products or algebraic requests."""


class InvalidPermutation(AlgebraError):
    """The sequence is not a bijection on 0..n-1."""


class NotPureClass(AlgebraError):
    """A field symbol reached an operation that needs a definite +/- class."""


class EmptyProduct(AlgebraError):
    """An expansion was requested for a product without factors."""


class OddLength(AlgebraError):
    """Pair partitions need an even number of positions."""


class MissingTime(AlgebraError):
    """A time-ordered operation received a symbol without a time label."""


class ShapeError(AlgebraError):
    """Matrix or label lists have incompatible shapes."""


# Models

class ModelError(WickError):
    """The reference-state model cannot serve the request."""


class UnknownMode(ModelError):
    """Mode index outside the model's mode table."""


class UnknownPair(ModelError):
    """Spin-momentum label without a Cooper pair in the BCS model."""


class UnknownContraction(ModelError):
    """The abstract model has no declared value for an ordered pair."""


class BadAmplitudes(ModelError):
    """Coherence factors or overlaps violate the model invariants."""


class ModelFileError(ModelError):
    """A model configuration file could not be read or validated."""


# Oracle

class OracleError(WickError):
    """The Fock-space oracle cannot represent the request."""


class SpaceTooLarge(OracleError):
    """The truncated Fock space exceeds the dense-matrix cap."""


class BadStateSpec(OracleError):
    """The reference-state recipe is inconsistent with the space."""


class UnknownSymbol(OracleError):
    """A symbol has no matrix representation in the space."""


# DSL

class ParseError(WickError):
    """Syntax error in an operator expression.

    Args:
        message: Human readable description
        line: 1-based line of the offending character
        column: 1-based column of the offending character
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
