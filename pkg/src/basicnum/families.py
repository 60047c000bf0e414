"""Deformed basic-number families.

Three deformations of the nonnegative integers are provided, each reducing to
plain n when its deformation is switched off:

* two-parameter family   ``[n]_{s,t} = (s^n - t^n) / (s - t)``
  with s = q1^2, t = q2^2. The sequence obeys the two-term recurrence
  ``x[n+1] = alpha*x[n] + beta*x[n-1]`` with alpha = s + t, beta = -s*t
  (this identification follows from matching the n = 2, 3 values, where
  [2] = alpha and [3] = alpha^2 + beta). At alpha = beta = 1 it reproduces
  the Fibonacci numbers.
* strength-mu family     ``[n]^mu = n / (1 + n*mu)``
  a rational, non-exponential deformation; it satisfies no fixed two-term
  linear recurrence for mu != 0.
* composed family        ``[n]_{s,t,mu} = [n]_{s,t} / (1 + mu*[n]_{s,t})``
  the strength-mu map applied to the two-parameter basic number. At mu = 0
  it equals the two-parameter value exactly, and for s, t -> the undeformed
  point it collapses to the strength-mu family. Other compositions with the
  same mu -> 0 limit exist; this one is the canonical choice consistent with
  both degenerate limits.

Internally the two-parameter family is stored via (s, t) rather than
(q1, q2): reaching alpha = beta = 1 requires s*t = -1, which no real (q1, q2)
pair attains, while real (s, t) with t < 0 covers it.

All evaluators are pure functions; everything here is safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validation import check_finite, check_index
from .errors import PoleError

# |s - t| below this (relative to parameter scale) switches the two-parameter
# evaluator to the confluent limit n*s^(n-1) to dodge catastrophic cancellation.
DEGENERACY_REL_TOL = 1e-12

# A denominator whose magnitude falls below this is treated as a true pole.
POLE_ABS_TOL = 1e-12

# Default relative tolerance for float comparisons against the exact layer.
DEFAULT_REL_TOL = 1e-9

# Routine working range for float sequences; |s| > 1 grows exponentially and
# double precision is comfortably exact well within this bound.
DEFAULT_FLOAT_MAX_INDEX = 30


@dataclass(frozen=True)
class QPairParams:
    """Parameters of the two-parameter family: s = q1^2, t = q2^2.

    t may be negative (required to reach alpha = beta = 1 in real
    arithmetic); both must be finite.
    """

    s: float
    t: float

    def __post_init__(self):
        object.__setattr__(self, "s", check_finite("s", self.s))
        object.__setattr__(self, "t", check_finite("t", self.t))

    @classmethod
    def from_q(cls, q1: float, q2: float) -> "QPairParams":
        """Build from the deformation bases themselves: s = q1^2, t = q2^2."""
        q1 = check_finite("q1", q1)
        q2 = check_finite("q2", q2)
        return cls(s=q1 * q1, t=q2 * q2)

    @classmethod
    def from_alpha_beta(cls, alpha: float, beta: float) -> "QPairParams":
        """Build from recurrence coefficients: s, t are the roots of
        x^2 - alpha*x - beta, so that s + t = alpha and s*t = -beta.

        Requires alpha^2 + 4*beta >= 0 (real roots). Roots are ordered
        s >= t. The larger-magnitude root is computed from the quadratic
        formula and the other from the product, which stays accurate when
        beta is small.
        """
        alpha = check_finite("alpha", alpha)
        beta = check_finite("beta", beta)
        disc = alpha * alpha + 4.0 * beta
        if disc < 0.0:
            raise ValueError(
                f"alpha^2 + 4*beta = {disc!r} is negative: the recurrence "
                "roots are complex and outside this family"
            )
        root = math.sqrt(disc)
        r1 = 0.5 * (alpha + root) if alpha >= 0.0 else 0.5 * (alpha - root)
        r2 = 0.0 if r1 == 0.0 else (-beta / r1) + 0.0
        return cls(s=max(r1, r2), t=min(r1, r2))

    @property
    def alpha(self) -> float:
        """Recurrence coefficient on x[n]: alpha = s + t."""
        return self.s + self.t

    @property
    def beta(self) -> float:
        """Recurrence coefficient on x[n-1]: beta = -s*t."""
        return -(self.s * self.t)


@dataclass(frozen=True)
class MuParam:
    """Strength of the rational mu-deformation; any finite real.

    Negative values are accepted; evaluations then guard against the pole
    at 1 + n*mu = 0 index by index.
    """

    mu: float

    def __post_init__(self):
        object.__setattr__(self, "mu", check_finite("mu", self.mu))


@dataclass(frozen=True)
class DeformationSpec:
    """Which deformation family to evaluate, with its parameters.

    ``family`` is one of ``"q"``, ``"mu"``, ``"composed"``; exactly the
    parameter fields that family needs must be set.
    """

    family: str
    qpair: QPairParams | None = None
    mu: MuParam | None = None

    _NEEDS = {"q": (True, False), "mu": (False, True), "composed": (True, True)}

    def __post_init__(self):
        if self.family not in self._NEEDS:
            raise ValueError(f"unknown family {self.family!r}; expected 'q', 'mu' or 'composed'")
        needs_q, needs_mu = self._NEEDS[self.family]
        if needs_q != (self.qpair is not None) or needs_mu != (self.mu is not None):
            raise ValueError(
                f"family {self.family!r} takes "
                f"{'qpair' if needs_q else 'no qpair'} and {'mu' if needs_mu else 'no mu'}"
            )

    @classmethod
    def q_family(cls, qpair: QPairParams) -> "DeformationSpec":
        return cls(family="q", qpair=qpair)

    @classmethod
    def mu_family(cls, mu: MuParam) -> "DeformationSpec":
        return cls(family="mu", mu=mu)

    @classmethod
    def composed_family(cls, qpair: QPairParams, mu: MuParam) -> "DeformationSpec":
        return cls(family="composed", qpair=qpair, mu=mu)

    def evaluate(self, n: int) -> float:
        """Basic number of this family at index n."""
        if self.family == "q":
            return q_basic(n, self.qpair)
        if self.family == "mu":
            return mu_basic(n, self.mu)
        return composed_basic(n, self.qpair, self.mu)

    def describe_params(self) -> dict:
        """Flat parameter dict, e.g. for serialized command metadata."""
        out: dict = {}
        if self.qpair is not None:
            out.update(s=self.qpair.s, t=self.qpair.t,
                       alpha=self.qpair.alpha, beta=self.qpair.beta)
        if self.mu is not None:
            out["mu"] = self.mu.mu
        return out


@dataclass(frozen=True)
class BasicSequence:
    """Basic numbers [0..max_index] of one family, contiguous from index 0."""

    spec: DeformationSpec
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("a basic-number sequence cannot be empty")
        if self.values[0] != 0.0:
            raise ValueError(f"values[0] must be 0 for every family, got {self.values[0]!r}")

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        """Iterate (n, value) rows."""
        return iter(enumerate(self.values))


def q_basic(n: int, p: QPairParams) -> float:
    """Two-parameter basic number [n]_{s,t} = (s^n - t^n) / (s - t).

    Parameters
    ----------
    n : int
        Nonnegative index.
    p : QPairParams
        Family parameters; near-degenerate s ~ t switches to the confluent
        limit n * s^(n-1).

    Returns
    -------
    float
        [0] = 0 and [1] = 1 exactly for every parameter choice.

    Raises
    ------
    OverflowError
        If the value exceeds double-precision range (large n with |s| > 1);
        never returns a silent infinity.
    """
    n = check_index("n", n)
    if n == 0:
        return 0.0
    if n == 1:
        return 1.0
    s, t = p.s, p.t
    try:
        if abs(s - t) < DEGENERACY_REL_TOL * max(abs(s), abs(t), 1.0):
            value = n * s ** (n - 1)
        else:
            value = (s ** n - t ** n) / (s - t)
    except OverflowError:
        raise OverflowError(
            f"basic number [{n}] at s={s!r}, t={t!r} exceeds double-precision range"
        ) from None
    if not math.isfinite(value):
        raise OverflowError(
            f"basic number [{n}] at s={s!r}, t={t!r} exceeds double-precision range"
        )
    return value


def mu_basic(n: int, m: MuParam) -> float:
    """Strength-mu basic number [n]^mu = n / (1 + n*mu).

    Raises
    ------
    PoleError
        If |1 + n*mu| falls below the pole threshold.
    """
    n = check_index("n", n)
    denom = 1.0 + n * m.mu
    if abs(denom) < POLE_ABS_TOL:
        raise PoleError(
            f"mu-family basic number undefined at n={n}: 1 + n*mu = {denom!r} vanishes",
            index=n, denominator=denom,
        )
    return n / denom


def composed_basic(n: int, p: QPairParams, m: MuParam) -> float:
    """Composed basic number [n]_{s,t} / (1 + mu*[n]_{s,t}).

    At mu = 0 this equals ``q_basic(n, p)`` bitwise.

    Raises
    ------
    PoleError
        If the composed denominator vanishes (threshold as in mu_basic).
    """
    base = q_basic(n, p)
    denom = 1.0 + m.mu * base
    if abs(denom) < POLE_ABS_TOL:
        raise PoleError(
            f"composed basic number undefined at n={n}: 1 + mu*[n] = {denom!r} vanishes",
            index=n, denominator=denom,
        )
    return base / denom


def generate_sequence(spec: DeformationSpec, max_index: int) -> BasicSequence:
    """Evaluate a family on the contiguous index range [0, max_index].

    Parameters
    ----------
    spec : DeformationSpec
        Family and parameters.
    max_index : int
        Largest index, at least 1.

    Raises
    ------
    PoleError
        Propagated from the evaluator with the offending index attached.
    OverflowError
        Propagated from the two-parameter evaluator on range overflow.
    """
    max_index = check_index("max_index", max_index)
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    return BasicSequence(spec=spec, values=tuple(spec.evaluate(n) for n in range(max_index + 1)))
