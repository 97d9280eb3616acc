"""Exception types raised by framescale."""


class FrameScaleError(Exception):
    """Base class for all library errors."""


class DimensionError(FrameScaleError, ValueError):
    """Operands have incompatible dimensions."""


class ExponentialGuardError(FrameScaleError, RuntimeError):
    """An exhaustive subset search was requested on too many vectors."""

    def __init__(self, n, max_n, what="subset search"):
        self.n = n
        self.max_n = max_n
        super().__init__(
            f"{what} over n={n} vectors exceeds max_n={max_n}; "
            "pass force=True (or --force) to run anyway"
        )


class RoutingError(FrameScaleError, RuntimeError):
    """The unique-scaling solver was called on dependent outer products."""


class ValidationError(FrameScaleError, ValueError):
    """A weight vector is not a valid scaling of the frame."""


class DecompositionError(FrameScaleError, RuntimeError):
    """A scaling could not be written as a convex combination of vertices."""
