"""Numerical mu -> 0 limits by Richardson extrapolation.

Both deformation families are power series in mu near zero (the strength-mu
family expands as n - n^2*mu + O(mu^2)), so polynomial extrapolation on a
geometric grid mu_k = mu0 * ratio^(-k) converges; the tableau assumes a
first-order leading error term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ._validation import check_finite, check_index
from .families import MuParam, QPairParams, composed_basic, mu_basic

DEFAULT_MU0 = 0.5
DEFAULT_RATIO = 2.0
DEFAULT_MAX_LEVELS = 20
DEFAULT_LIMIT_TOL = 1e-10


@dataclass(frozen=True)
class LimitEstimate:
    """Extrapolated limit with its convergence diagnostics.

    ``grid`` holds the sampled (mu, value) pairs, largest mu first;
    ``error_history`` the successive |difference of the last two diagonal
    extrapolants| recorded one per refinement level.
    """

    value: float
    error_estimate: float
    grid: tuple[tuple[float, float], ...]
    converged: bool
    error_history: tuple[float, ...]

    @property
    def levels(self) -> int:
        return len(self.grid)


def mu_family_evaluator(n: int, mu: float) -> float:
    """Adapter: strength-mu basic number as a plain (n, mu) callable."""
    return mu_basic(n, MuParam(mu))


def composed_family_evaluator(qpair: QPairParams) -> Callable[[int, float], float]:
    """Adapter factory: composed basic number at fixed (s, t) as (n, mu)."""
    def evaluate(n: int, mu: float) -> float:
        return composed_basic(n, qpair, MuParam(mu))
    return evaluate


def limit_mu_to_zero(family: Callable[[int, float], float], n: int,
                     tol: float = DEFAULT_LIMIT_TOL, *,
                     mu0: float = DEFAULT_MU0, ratio: float = DEFAULT_RATIO,
                     max_levels: int = DEFAULT_MAX_LEVELS) -> LimitEstimate:
    """Extrapolate family(n, mu) to mu -> 0.

    Samples on the geometric grid mu_k = mu0 * ratio^(-k) feed a Richardson
    tableau; refinement stops once at least three samples are in and the
    last two diagonal extrapolants agree within ``tol``, or after
    ``max_levels`` refinements (then ``converged`` is False and the best
    estimate is still returned). Evaluation order is fixed, so results are
    deterministic.

    Parameters
    ----------
    family : callable
        ``family(n, mu) -> float``; may raise PoleError, which propagates.
    n : int
        Nonnegative index passed through to the evaluator.
    tol : float
        Convergence target for the error estimate.

    Returns
    -------
    LimitEstimate
    """
    n = check_index("n", n)
    tol = check_finite("tol", tol)
    mu0 = check_finite("mu0", mu0)
    ratio = check_finite("ratio", ratio)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if mu0 <= 0.0:
        raise ValueError("mu0 must be positive")
    if ratio <= 1.0:
        raise ValueError("ratio must exceed 1")
    if max_levels < 2:
        raise ValueError("max_levels must be >= 2 (the grid needs >= 3 points)")

    grid: list[tuple[float, float]] = []
    history: list[float] = []
    row_prev: list[float] = []
    for k in range(max_levels + 1):
        mu_k = mu0 * ratio ** (-k)
        y = float(family(n, mu_k))
        grid.append((mu_k, y))
        row = [y]
        for j in range(1, k + 1):
            factor = ratio ** j
            row.append((factor * row[j - 1] - row_prev[j - 1]) / (factor - 1.0))
        if k >= 1:
            err = abs(row[k] - row_prev[k - 1])
            history.append(err)
            if k >= 2 and err <= tol:
                return LimitEstimate(value=row[k], error_estimate=err,
                                     grid=tuple(grid), converged=True,
                                     error_history=tuple(history))
        row_prev = row
    return LimitEstimate(value=row_prev[-1], error_estimate=history[-1],
                         grid=tuple(grid), converged=False,
                         error_history=tuple(history))
