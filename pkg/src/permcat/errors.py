"""Exception types shared across the package."""


class DegreeMismatchError(ValueError):
    """A permutation was applied to data of the wrong length."""


class ComposabilityError(ValueError):
    """Boundaries do not match (maps, morphisms, or operations)."""


class BoundExceededError(Exception):
    """A computation needs operations beyond the arity/length bound.

    Raised instead of silently truncating, so callers can distinguish
    "fails" from "unknown".
    """


class MalformedStructureError(Exception):
    """A table lookup failed on data that should have been total."""


class UnsupportedFragmentError(Exception):
    """The requested value lies outside the decomposable tensor fragment."""
