"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BivarError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(BivarError):
    """Vector or pairing dimensions do not line up."""


class MembershipError(BivarError):
    """A pair (a, b) lies outside the admissible set of the pairing."""


class ExpressionError(BivarError):
    """Syntax or semantic error in a function expression.

    ``offset`` is the 0-based character position of the offending token.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class ArityMismatch(BivarError):
    """Declared codomain dimension disagrees with the parsed expression."""


class DomainError(BivarError):
    """An argument lies outside the function's interval of definition."""


class EvaluationError(BivarError):
    """Evaluation hit a singularity with no defined closure value."""


class CompositionError(BivarError):
    """Operands do not share pairing, reference vector, or domain."""


class VariationNotConverged(BivarError):
    """A bounded-variation wrapper was requested for a function whose
    refinement did not reach the converged status."""


class CatalogError(BivarError):
    """Unknown catalog identifier."""
