"""Two-term linear recurrence fitting and Fibonacci detection.

The solver recovers (alpha, beta) of ``x[n+1] = alpha*x[n] + beta*x[n-1]``
from a sequence. :class:`RecurrenceFitter` wraps it in a scikit-learn
compatible estimator (``fit`` / ``predict`` / ``get_params``) so it composes
with the wider ecosystem; :func:`fit_recurrence` is the plain one-call
surface over the same solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_sequence, check_finite
from .errors import DegenerateSequenceError
from .exact import fibonacci_oracle

# A consecutive 2x2 system with |det| below this (relative to the squared
# entry scale) is considered singular and skipped.
SINGULAR_REL_TOL = 1e-12

# Default relative tolerance of the Fibonacci check; the closed-form float
# evaluation at the Fibonacci point accumulates a little rounding.
FIBONACCI_REL_TOL = 1e-9

EXACT_SOLVE = "exact_solve"
LEAST_SQUARES = "least_squares"


@dataclass(frozen=True)
class RecurrenceFit:
    """Fitted coefficients with the max absolute defect over the sequence."""

    alpha: float
    beta: float
    residual: float
    method: str


class FibonacciCheck(NamedTuple):
    is_fibonacci: bool
    first_mismatch: Optional[int]


def _solve_coefficients(x: np.ndarray, singular_tol: float) -> tuple[float, float, str]:
    # Exact solve from the first nonsingular pair of consecutive equations
    # x[k+1] = alpha*x[k] + beta*x[k-1], k and k+1; least squares over all
    # equations only when every pair is singular.
    m = len(x)
    for k in range(1, m - 2):
        det = x[k] * x[k] - x[k - 1] * x[k + 1]
        scale = max(abs(x[k - 1]), abs(x[k]), abs(x[k + 1]), 1.0)
        if abs(det) > singular_tol * scale * scale:
            alpha = (x[k + 1] * x[k] - x[k - 1] * x[k + 2]) / det
            beta = (x[k] * x[k + 2] - x[k + 1] * x[k + 1]) / det
            return float(alpha), float(beta), EXACT_SOLVE
    design = np.column_stack([x[1:-1], x[:-2]])
    target = x[2:]
    coef, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < 2:
        raise DegenerateSequenceError(
            "no unique two-term recurrence: every consecutive 2x2 system is "
            "singular and the least-squares design is rank deficient"
        )
    return float(coef[0]), float(coef[1]), LEAST_SQUARES


def _max_defect(x: np.ndarray, alpha: float, beta: float) -> float:
    return float(np.abs(x[2:] - alpha * x[1:-1] - beta * x[:-2]).max())


def fit_recurrence(seq, *, singular_tol: float = SINGULAR_REL_TOL) -> RecurrenceFit:
    """Fit x[n+1] = alpha*x[n] + beta*x[n-1] to a sequence of >= 4 values.

    Parameters
    ----------
    seq : array-like or BasicSequence
        Finite values indexed from 0.
    singular_tol : float
        Relative determinant threshold below which a 2x2 solve is skipped.

    Returns
    -------
    RecurrenceFit
        Coefficients, the max absolute recurrence defect over the whole
        sequence, and which solver produced them: ``"exact_solve"`` from the
        first nonsingular pair of consecutive index equations (for a
        recurrent sequence starting at indices (1, 2, 3)), else
        ``"least_squares"`` over all consecutive triples.

    Raises
    ------
    DegenerateSequenceError
        If no unique recurrence exists (e.g. all-zero or geometric input).
    """
    x = as_sequence(seq, min_length=4)
    alpha, beta, method = _solve_coefficients(x, singular_tol)
    return RecurrenceFit(alpha=alpha, beta=beta,
                         residual=_max_defect(x, alpha, beta), method=method)


class RecurrenceFitter(BaseEstimator):
    """Scikit-learn style estimator for two-term linear recurrences.

    Parameters
    ----------
    singular_tol : float
        Relative determinant threshold for the exact-solve path.

    Attributes
    ----------
    alpha_, beta_ : float
        Fitted recurrence coefficients.
    residual_ : float
        Max absolute defect of the fitted recurrence over the input.
    method_ : str
        ``"exact_solve"`` or ``"least_squares"``.
    seeds_ : tuple of float
        First two input values, used by :meth:`predict`.

    Examples
    --------
    >>> fitter = RecurrenceFitter().fit([0, 1, 1, 2, 3, 5, 8])
    >>> fitter.alpha_, fitter.beta_
    (1.0, 1.0)
    >>> fitter.predict([7, 8])
    array([13., 21.])
    """

    def __init__(self, singular_tol: float = SINGULAR_REL_TOL):
        self.singular_tol = singular_tol

    def fit(self, X, y=None):
        """Fit the recurrence to a 1-d sequence (or single-column array)."""
        x = as_sequence(X, min_length=4)
        alpha, beta, method = _solve_coefficients(x, self.singular_tol)
        self.alpha_ = alpha
        self.beta_ = beta
        self.method_ = method
        self.residual_ = _max_defect(x, alpha, beta)
        self.seeds_ = (float(x[0]), float(x[1]))
        self.n_points_ = int(len(x))
        return self

    def predict(self, indices) -> np.ndarray:
        """Recurrence values at the given nonnegative indices, iterated from
        the fitted seeds."""
        check_is_fitted(self)
        idx = np.asarray(indices, dtype=int)
        if idx.ndim == 0:
            idx = idx.reshape(1)
        if np.any(idx < 0):
            raise ValueError("indices must be nonnegative")
        top = int(idx.max())
        values = np.empty(max(top + 1, 2))
        values[0], values[1] = self.seeds_
        for n in range(2, top + 1):
            values[n] = self.alpha_ * values[n - 1] + self.beta_ * values[n - 2]
        return values[idx]

    def to_result(self) -> RecurrenceFit:
        """The fitted state as a plain :class:`RecurrenceFit` record."""
        check_is_fitted(self)
        return RecurrenceFit(alpha=self.alpha_, beta=self.beta_,
                             residual=self.residual_, method=self.method_)


def is_fibonacci(seq, tol: float = FIBONACCI_REL_TOL) -> FibonacciCheck:
    """Check a sequence against the exact Fibonacci numbers.

    Each entry must satisfy |x[n] - F_n| <= tol * max(F_n, 1); on failure the
    smallest mismatching index is reported.

    Parameters
    ----------
    seq : array-like or BasicSequence
        At least 3 finite values.
    tol : float
        Relative tolerance against the integer oracle.
    """
    tol = check_finite("tol", tol)
    x = as_sequence(seq, min_length=3)
    for n, value in enumerate(x):
        f = fibonacci_oracle(n)
        if abs(value - f) > tol * max(f, 1):
            return FibonacciCheck(False, n)
    return FibonacciCheck(True, None)
