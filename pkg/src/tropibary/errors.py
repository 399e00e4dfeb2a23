"""Exception taxonomy shared across the package.

Errors split into two families: bad input data (rejected before any work
starts) and expected negative results (a constructive routine declining an
instance outside its validity region).  The CLI maps the former to exit
code 1 and the latter to exit code 2.
"""


class TropibaryError(Exception):
    """Base class for every error raised by this package."""


class BadInput(TropibaryError):
    """Malformed or inconsistent input data."""


class NotNormalized(BadInput):
    """Weight data whose maximum is not 0 (or a weight above 0)."""


class SpaceMismatch(BadInput):
    """Operands live on different finite spaces."""


class DimensionMismatch(BadInput):
    """Vectors or boxes of different dimension were combined."""


class SchemaError(BadInput):
    """A JSON document does not match its declared schema."""


class UncoveredAtom(BadInput):
    """A measure atom lies in no element of the supplied cover."""


class NonConvexElement(BadInput):
    """A cover element failed a convexity check (barycenter escaped it)."""


class EmptyTestFamily(BadInput):
    """measure_dist was called with no test functions to compare on."""


class NoZeroWeightPrefix(BadInput):
    """A measure offered to the barycenter lift has no zero-weight atom."""


class BudgetExceeded(BadInput):
    """A brute-force search exceeded its candidate budget."""


class Rejection(TropibaryError):
    """Expected negative result: the instance is outside a validity region."""


class OutsideValidityRegion(Rejection):
    """The target is too far from the image for the single-shot lift.

    The message carries the inequality that failed, so callers can see
    which part of the validity region was violated.
    """


class InconsistentFiber(Rejection):
    """A fiber-lift precondition failed: the given point is not in the pullback."""


class InfeasibleBarycenter(Rejection):
    """Sampling could not produce a measure with the requested barycenter."""
