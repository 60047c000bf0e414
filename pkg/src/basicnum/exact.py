"""Exact-rational reference layer.

Every floating-point evaluator in :mod:`basicnum.families` has a counterpart
here computed in arbitrary-precision rational arithmetic
(:class:`fractions.Fraction`), used to validate the float layer and to pin
expected values in tests. Fractions are always kept in lowest terms with a
positive denominator, which is exactly the canonical form required of the
exact layer.
"""

from __future__ import annotations

from fractions import Fraction

from ._validation import check_index
from .errors import PoleError

# Rational values round-trip exactly; this is the index range the exact layer
# is routinely exercised over (integer growth stays cheap well past it).
DEFAULT_EXACT_MAX_INDEX = 90

ExactValue = Fraction


def fibonacci_oracle(n: int) -> int:
    """Exact Fibonacci number F_n from F_0 = 0, F_1 = 1 by integer iteration."""
    n = check_index("n", n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def mu_basic_exact(n: int, mu) -> Fraction:
    """Exact rational strength-mu basic number n / (1 + n*mu).

    Parameters
    ----------
    n : int
        Nonnegative index.
    mu : Fraction or int or str
        Deformation strength, coerced to an exact rational.

    Raises
    ------
    PoleError
        If 1 + n*mu is exactly zero.
    """
    n = check_index("n", n)
    mu = Fraction(mu)
    denom = 1 + n * mu
    if denom == 0:
        raise PoleError(
            f"mu-family basic number undefined at n={n}: 1 + n*mu = 0 exactly",
            index=n, denominator=0.0,
        )
    return Fraction(n) / denom


def q_basic_exact(n: int, s, t) -> Fraction:
    """Exact rational two-parameter basic number (s^n - t^n)/(s - t).

    At s == t the removable singularity is filled with the confluent value
    n * s^(n-1), so the function is total over rational parameters.
    """
    n = check_index("n", n)
    s = Fraction(s)
    t = Fraction(t)
    if n == 0:
        return Fraction(0)
    if s == t:
        return n * s ** (n - 1)
    return (s ** n - t ** n) / (s - t)
