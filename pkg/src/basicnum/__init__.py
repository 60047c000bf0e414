"""Deformed basic numbers of oscillator algebras.

Evaluate the two-parameter, strength-mu and composed deformations of the
integers, fit two-term linear recurrences to the resulting sequences, detect
the Fibonacci property, and extrapolate mu -> 0 limits numerically. An
exact-rational layer backs every floating-point evaluator.
"""

from .errors import DegenerateSequenceError, PoleError
from .exact import (DEFAULT_EXACT_MAX_INDEX, ExactValue, fibonacci_oracle,
                    mu_basic_exact, q_basic_exact)
from .families import (DEFAULT_FLOAT_MAX_INDEX, DEFAULT_REL_TOL,
                       DEGENERACY_REL_TOL, POLE_ABS_TOL, BasicSequence,
                       DeformationSpec, MuParam, QPairParams, composed_basic,
                       generate_sequence, mu_basic, q_basic)
from .limits import (DEFAULT_LIMIT_TOL, LimitEstimate,
                     composed_family_evaluator, limit_mu_to_zero,
                     mu_family_evaluator)
from .recurrence import (FIBONACCI_REL_TOL, FibonacciCheck, RecurrenceFit,
                         RecurrenceFitter, fit_recurrence, is_fibonacci)
from .report import (CONCLUSION_EXPECTED, DEFAULT_MAX_INDEX, DEFAULT_MU_GRID,
                     CommentReport, verify_comment)

__version__ = "0.1.0"

__all__ = [
    "BasicSequence",
    "CommentReport",
    "CONCLUSION_EXPECTED",
    "DEFAULT_EXACT_MAX_INDEX",
    "DEFAULT_FLOAT_MAX_INDEX",
    "DEFAULT_LIMIT_TOL",
    "DEFAULT_MAX_INDEX",
    "DEFAULT_MU_GRID",
    "DEFAULT_REL_TOL",
    "DEGENERACY_REL_TOL",
    "DegenerateSequenceError",
    "DeformationSpec",
    "ExactValue",
    "FIBONACCI_REL_TOL",
    "FibonacciCheck",
    "LimitEstimate",
    "MuParam",
    "POLE_ABS_TOL",
    "PoleError",
    "QPairParams",
    "RecurrenceFit",
    "RecurrenceFitter",
    "composed_basic",
    "composed_family_evaluator",
    "fibonacci_oracle",
    "fit_recurrence",
    "generate_sequence",
    "is_fibonacci",
    "limit_mu_to_zero",
    "mu_basic",
    "mu_basic_exact",
    "mu_family_evaluator",
    "q_basic",
    "q_basic_exact",
    "verify_comment",
]
