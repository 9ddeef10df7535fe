"""Exact higher-order q-Euler numbers and polynomials.

Closed-form evaluators over exact rationals, an identity registry checked by
exact equality, finite-level fermionic q-Volkenborn sums certified p-adically,
and a floating-point q-Euler zeta function.
"""

from qeuler.qcore import (
    BudgetExceeded,
    DomainError,
    EvalPoint,
    PoleError,
    binomial,
    check_q,
    denominator_support,
    format_rational,
    parse_rational,
    q_bracket_int,
    q_bracket_tau,
    q_shifted_factorial,
)
from qeuler.euler import (
    EulerIndex,
    classical_euler_number,
    classical_euler_poly,
    euler_number_hk,
    euler_number_k,
    euler_poly_0k,
    euler_poly_h1,
    euler_poly_hk,
    euler_poly_k,
    rebase_point,
)

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "EulerIndex",
    "EvalPoint",
    "PoleError",
    "binomial",
    "check_q",
    "classical_euler_number",
    "classical_euler_poly",
    "denominator_support",
    "euler_number_hk",
    "euler_number_k",
    "euler_poly_0k",
    "euler_poly_h1",
    "euler_poly_hk",
    "euler_poly_k",
    "format_rational",
    "parse_rational",
    "q_bracket_int",
    "q_bracket_tau",
    "q_shifted_factorial",
    "rebase_point",
]

__version__ = "0.1.0"
