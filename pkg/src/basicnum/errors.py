"""Exception types shared by the evaluators and the fitting layer."""

from __future__ import annotations


class PoleError(ArithmeticError):
    """A deformed basic number's denominator vanished at the requested index.

    Carries the offending ``index`` and the near-zero ``denominator`` so
    callers can report exactly where the evaluation hit the singularity.
    """

    def __init__(self, message: str, *, index: int | None = None,
                 denominator: float | None = None):
        super().__init__(message)
        self.index = index
        self.denominator = denominator


class DegenerateSequenceError(ValueError):
    """No unique two-term recurrence exists for the given sequence.

    Raised when every consecutive 2x2 solve is singular and the
    least-squares design is rank deficient (e.g. all-zero or purely
    geometric sequences).
    """
