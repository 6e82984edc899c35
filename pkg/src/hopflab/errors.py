"""Exception and warning types shared across the package.

Every failure mode an operation can signal is represented by a concrete
class here, so callers can catch by meaning rather than by message text.
"""


class HopflabError(Exception):
    """Base class for all package errors."""


class PositivityViolation(HopflabError):
    """A discrete transverse density is non-positive somewhere.

    Parameters
    ----------
    index : int or tuple
        Node (or (slice, node) pair) where the density first fails.
    value : float
        The offending density value.
    """

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(
            "density is %.3e <= 0 at node %s" % (value, repr(index))
        )


class GridMismatch(HopflabError):
    """Two objects that must share a grid do not."""


class NonConvexInput(HopflabError):
    """A function that must be discretely convex is not."""


class TruncationWarning(UserWarning):
    """The truncated window [-L, L] clipped a supremum; increase L."""


class NewtonDivergence(HopflabError):
    """Newton failed to reach tolerance at some continuation stage."""

    def __init__(self, eps, message=""):
        self.eps = eps
        super().__init__(message or "Newton did not converge at eps=%g" % eps)


class PositivityLoss(HopflabError):
    """Damped line search could not keep the iterate positive."""

    def __init__(self, eps, message=""):
        self.eps = eps
        super().__init__(
            message or "positivity could not be preserved at eps=%g" % eps
        )


class NotDecreasing(HopflabError):
    """A sequence required to be pointwise decreasing is not.

    Parameters
    ----------
    k : int
        Index of the first offending pair (members k and k+1).
    index : int
        Grid node where monotonicity fails.
    """

    def __init__(self, k, index):
        self.k = k
        self.index = index
        super().__init__(
            "sequence member %d is not >= member %d at node %d"
            % (k, k + 1, index)
        )


class DegenerateTriangle(HopflabError):
    """A comparison-triangle side is numerically zero."""
