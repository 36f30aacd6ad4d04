"""Exception types raised by ghbounds."""


class DomainError(ValueError):
    """Parameters or arguments outside the domain where a quantity is defined.

    The message names the violated condition, e.g. ``"requires c > 1"``.
    """


class BesselRangeError(OverflowError):
    """An unscaled Bessel value is not representable as a double."""


class ConvergenceError(RuntimeError):
    """A numerical procedure stopped before meeting its tolerance.

    Attributes
    ----------
    achieved : float
        Best error estimate reached before giving up (``nan`` if unknown).
    """

    def __init__(self, message, achieved=float("nan")):
        super().__init__(message)
        self.achieved = achieved


class BracketError(ConvergenceError):
    """A root-finding bracket does not straddle a sign change."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature ran out of subdivisions before meeting its tolerance."""
