"""One-shot verification report: which deformation reproduces Fibonacci.

The procedure checks, mechanically, that

* every strength-mu sequence on the given grid fails the Fibonacci check,
* the mu -> 0 extrapolation of that family is the naturals (recurrence
  coefficients (2, -1)), still not Fibonacci,
* the two-parameter family at alpha = beta = 1 fits coefficients (1, 1) and
  passes the Fibonacci check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ._validation import check_finite, check_index
from .families import (DEFAULT_FLOAT_MAX_INDEX, DeformationSpec, MuParam,
                       QPairParams, generate_sequence)
from .limits import DEFAULT_LIMIT_TOL, limit_mu_to_zero, mu_family_evaluator
from .recurrence import FIBONACCI_REL_TOL, RecurrenceFit, fit_recurrence, is_fibonacci

DEFAULT_MU_GRID = (0.1, 0.01, 0.001)
DEFAULT_MAX_INDEX = 10

# Expected recurrence coefficients and the tolerance they are matched at.
EXPECTED_LIMIT_COEFFS = (2.0, -1.0)
EXPECTED_Q_COEFFS = (1.0, 1.0)
COEFF_TOL = 1e-8

CONCLUSION_EXPECTED = "mu-family: not Fibonacci; q-family at alpha=beta=1: Fibonacci"


@dataclass(frozen=True)
class MuFamilyResult:
    mu: float
    sequence: tuple[float, ...]
    fit: RecurrenceFit
    fibonacci: bool
    first_mismatch: Optional[int]


@dataclass(frozen=True)
class LimitSequenceResult:
    sequence: tuple[float, ...]
    fit: RecurrenceFit
    fibonacci: bool
    first_mismatch: Optional[int]
    converged: bool
    max_error_estimate: float


@dataclass(frozen=True)
class QFamilyResult:
    sequence: tuple[float, ...]
    fit: RecurrenceFit
    fibonacci: bool
    first_mismatch: Optional[int]


@dataclass(frozen=True)
class CommentReport:
    mu_results: tuple[MuFamilyResult, ...]
    limit_result: LimitSequenceResult
    q_result: QFamilyResult
    conclusion: str
    matches_expected: bool

    def to_payload(self) -> dict:
        """JSON-ready dict; key layout is part of the CLI contract."""
        def fit_dict(fit: RecurrenceFit) -> dict:
            return {"alpha": fit.alpha, "beta": fit.beta,
                    "residual": fit.residual, "method": fit.method}

        return {
            "mu_results": [
                {"mu": r.mu, "sequence": list(r.sequence), "fit": fit_dict(r.fit),
                 "fibonacci": r.fibonacci, "first_mismatch": r.first_mismatch}
                for r in self.mu_results
            ],
            "limit_fit": {
                "sequence": list(self.limit_result.sequence),
                "fit": fit_dict(self.limit_result.fit),
                "fibonacci": self.limit_result.fibonacci,
                "first_mismatch": self.limit_result.first_mismatch,
                "converged": self.limit_result.converged,
                "max_error_estimate": self.limit_result.max_error_estimate,
            },
            "q_fit": {
                "sequence": list(self.q_result.sequence),
                "fit": fit_dict(self.q_result.fit),
                "fibonacci": self.q_result.fibonacci,
                "first_mismatch": self.q_result.first_mismatch,
            },
            "conclusion": self.conclusion,
            "matches_expected": self.matches_expected,
        }


def _close(value: float, target: float, tol: float) -> bool:
    return abs(value - target) <= tol


def verify_comment(mu_grid=DEFAULT_MU_GRID, max_index: int = DEFAULT_MAX_INDEX, *,
                   fib_tol: float = FIBONACCI_REL_TOL,
                   limit_tol: float = DEFAULT_LIMIT_TOL,
                   coeff_tol: float = COEFF_TOL) -> CommentReport:
    """Run the full verification procedure and assemble the report.

    Parameters
    ----------
    mu_grid : iterable of float
        Deformation strengths to test directly; each must be pole-free up to
        ``max_index``.
    max_index : int
        Sequence length knob: needs the four fit points plus at least one
        verification point (>= 4), and stays within the float working range.

    Raises
    ------
    ValueError
        On an empty grid or out-of-range ``max_index``.
    PoleError
        If some grid entry hits a pole at an index <= max_index.
    """
    mu_values = [check_finite("mu", mu) for mu in mu_grid]
    if not mu_values:
        raise ValueError("mu_grid must be nonempty")
    max_index = check_index("max_index", max_index)
    if max_index < 4:
        raise ValueError(
            "max_index must be >= 4: the fit needs four points plus at "
            "least one verification point"
        )
    if max_index > DEFAULT_FLOAT_MAX_INDEX:
        raise ValueError(f"max_index must be <= {DEFAULT_FLOAT_MAX_INDEX} in floating point")

    mu_results = []
    for mu in mu_values:
        seq = generate_sequence(DeformationSpec.mu_family(MuParam(mu)), max_index)
        fit = fit_recurrence(seq)
        verdict = is_fibonacci(seq, tol=fib_tol)
        mu_results.append(MuFamilyResult(
            mu=mu, sequence=seq.values, fit=fit,
            fibonacci=verdict.is_fibonacci, first_mismatch=verdict.first_mismatch))

    estimates = [limit_mu_to_zero(mu_family_evaluator, n, tol=limit_tol)
                 for n in range(max_index + 1)]
    limit_values = tuple(e.value for e in estimates)
    limit_fit = fit_recurrence(limit_values)
    limit_verdict = is_fibonacci(limit_values, tol=fib_tol)
    limit_result = LimitSequenceResult(
        sequence=limit_values, fit=limit_fit,
        fibonacci=limit_verdict.is_fibonacci,
        first_mismatch=limit_verdict.first_mismatch,
        converged=all(e.converged for e in estimates),
        max_error_estimate=max(e.error_estimate for e in estimates))

    q_seq = generate_sequence(
        DeformationSpec.q_family(QPairParams.from_alpha_beta(1.0, 1.0)), max_index)
    q_fit = fit_recurrence(q_seq)
    q_verdict = is_fibonacci(q_seq, tol=fib_tol)
    q_result = QFamilyResult(sequence=q_seq.values, fit=q_fit,
                             fibonacci=q_verdict.is_fibonacci,
                             first_mismatch=q_verdict.first_mismatch)

    problems = []
    for r in mu_results:
        if r.fibonacci:
            problems.append(f"mu={r.mu!r} sequence passed the Fibonacci check")
    if limit_result.fibonacci:
        problems.append("extrapolated mu->0 sequence passed the Fibonacci check")
    if not (_close(limit_fit.alpha, EXPECTED_LIMIT_COEFFS[0], coeff_tol)
            and _close(limit_fit.beta, EXPECTED_LIMIT_COEFFS[1], coeff_tol)):
        problems.append(
            f"mu->0 limit fit ({limit_fit.alpha!r}, {limit_fit.beta!r}) is not (2, -1)")
    if not q_result.fibonacci:
        problems.append("q-family sequence at alpha=beta=1 failed the Fibonacci check")
    if not (_close(q_fit.alpha, EXPECTED_Q_COEFFS[0], coeff_tol)
            and _close(q_fit.beta, EXPECTED_Q_COEFFS[1], coeff_tol)):
        problems.append(
            f"q-family fit ({q_fit.alpha!r}, {q_fit.beta!r}) is not (1, 1)")

    matches = not problems
    conclusion = CONCLUSION_EXPECTED if matches else "contradicted: " + "; ".join(problems)
    return CommentReport(mu_results=tuple(mu_results), limit_result=limit_result,
                         q_result=q_result, conclusion=conclusion,
                         matches_expected=matches)
