"""Exception types shared across the package.

The CLI maps each class to a distinct exit code, so library code raises
these rather than bare ``ValueError``/``RuntimeError`` where the
distinction matters to a caller.
"""


class PreconditionError(ValueError):
    """Parameters outside the range an operation is defined for."""


class WorkBoundExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured work guard."""

    def __init__(self, what: str, estimate: int, bound: int):
        self.estimate = estimate
        self.bound = bound
        super().__init__(
            f"{what}: estimated work {estimate} exceeds bound {bound} "
            f"(raise the work bound to force it)"
        )


class VerificationError(AssertionError):
    """A computed object failed one of its own invariants."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"invariant violated: {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class CaptureFailure(RuntimeError):
    """No sampled partition family captured every required r-set."""
