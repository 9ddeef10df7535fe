"""Closed forms for the higher-order q-Euler numbers and polynomials.

The central object is

    E^{(h,k)}_{m,q}(x) = [2]_q^k / (1-q)^m
        * sum_j C(m,j) (-1)^j tau^j / (-q^{j+h} : q^{-1})_k,    tau = q^x,

the k-fold fermionic q-Volkenborn integral of [x + x_1 + ... + x_k]_q^m
against the weight q^{(h-1)x_1 + ... + (h-k)x_k}.  For k = 0 (no integrals)
it is [x]_q^m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Sequence

from qeuler.qcore import (
    DomainError,
    EvalPoint,
    as_rational,
    binomial,
    check_q,
    denominator_support,
    q_shifted_factorial,
    reject_poles,
)

__all__ = [
    "EulerIndex",
    "classical_euler_higher",
    "classical_euler_number",
    "classical_euler_poly",
    "euler_number_hk",
    "euler_number_k",
    "euler_poly_0k",
    "euler_poly_h1",
    "euler_poly_hk",
    "euler_poly_k",
    "fermionic_moment",
    "q_euler",
    "rebase_point",
    "reflect_point",
    "series_coefficient",
]


@dataclass(frozen=True, order=True)
class EulerIndex:
    """Degree ``m``, weight ``h`` and order ``k`` of ``E^{(h,k)}_{m,q}``."""

    m: int
    h: int
    k: int

    def __post_init__(self):
        if self.m < 0:
            raise DomainError(f"degree m must be >= 0, got {self.m}")
        if self.k < 0:
            raise DomainError(f"order k must be >= 0, got {self.k}")


def _check_degree(m: int, k: int) -> None:
    if m < 0:
        raise DomainError(f"degree m must be >= 0, got {m}")
    if k < 0:
        raise DomainError(f"order k must be >= 0, got {k}")


@lru_cache(maxsize=1 << 17)
def q_euler(m: int, h: int, k: int, q: Any, tau: Any = 1) -> Any:
    """``E^{(h,k)}_{m,q}(x)`` at ``tau = q^x``; ``tau = 1`` gives the number.

    Raises :class:`PoleError` naming the exponent if some ``1 + q^e`` in the
    denominator vanishes.
    """
    _check_degree(m, k)
    q = check_q(q)
    tau = as_rational(tau)
    if tau == 0:
        raise DomainError("tau (the value of q^x) must be nonzero")
    if k == 0:
        return ((1 - tau) / (1 - q)) ** m
    reject_poles(q, denominator_support(m, h, k))
    qinv = 1 / q
    total = Fraction(0)
    tau_j = Fraction(1)
    for j in range(m + 1):
        denom = q_shifted_factorial(-(q ** (j + h)), qinv, k)
        total = total + binomial(m, j) * (-1) ** j * tau_j / denom
        tau_j = tau_j * tau
    return (1 + q) ** k / (1 - q) ** m * total


def euler_number_hk(idx: EulerIndex, q: Any) -> Any:
    """The number ``E^{(h,k)}_{m,q}``."""
    return q_euler(idx.m, idx.h, idx.k, check_q(q), 1)


def euler_poly_hk(idx: EulerIndex, pt: EvalPoint) -> Any:
    """The polynomial ``E^{(h,k)}_{m,q}(x)`` at ``pt = (q, q^x)``."""
    return q_euler(idx.m, idx.h, idx.k, pt.q, pt.tau)


def euler_poly_h1(m: int, h: int, pt: EvalPoint) -> Any:
    """Order-one fast path: a single fermionic integral."""
    _check_degree(m, 1)
    q, tau = pt.q, pt.tau
    reject_poles(q, range(h, h + m + 1))
    total = Fraction(0)
    for l in range(m + 1):
        total = total + binomial(m, l) * (-1) ** l * tau**l / (1 + q ** (l + h))
    return (1 + q) / (1 - q) ** m * total


def euler_poly_0k(m: int, k: int, pt: EvalPoint) -> Any:
    """Weight-zero family ``E^{(0,k)}_{m,q}(x)``."""
    _check_degree(m, k)
    if k < 1:
        raise DomainError("order k must be >= 1")
    q, tau = pt.q, pt.tau
    reject_poles(q, denominator_support(m, 0, k))
    total = Fraction(0)
    for j in range(m + 1):
        total = total + binomial(m, j) * tau**j * (-1) ** j / q_shifted_factorial(
            -(q**j), 1 / q, k
        )
    return (1 + q) ** k / (1 - q) ** m * total


def euler_number_k(m: int, k: int, q: Any) -> Any:
    """``E^{(k)}_{m,q} = E^{(k,k)}_{m,q}``."""
    return q_euler(m, k, k, check_q(q), 1)


def euler_poly_k(m: int, k: int, pt: EvalPoint) -> Any:
    """``E^{(k)}_{m,q}(x) = E^{(k,k)}_{m,q}(x)``."""
    return q_euler(m, k, k, pt.q, pt.tau)


def fermionic_moment(m: int, exponents: Sequence[int], pt: EvalPoint) -> Any:
    """Closed form of the fermionic integral of ``[x + sum x_i]^m q^{sum a_i x_i}``.

    One integration variable per entry ``a_i`` of ``exponents``.  Uses
    ``int q^{a y} dmu_{-q}(y) = [2]_q / (1 + q^{a+1})`` coordinatewise after
    expanding the bracket power in powers of ``q^{sum x_i}``.
    """
    _check_degree(m, len(exponents))
    q, tau = pt.q, pt.tau
    reject_poles(q, {j + a + 1 for j in range(m + 1) for a in exponents})
    total = Fraction(0)
    for j in range(m + 1):
        term = binomial(m, j) * (-tau) ** j
        for a in exponents:
            term = term / (1 + q ** (j + a + 1))
        total = total + term
    return (1 + q) ** len(exponents) / (1 - q) ** m * total


def rebase_point(pt: EvalPoint, l: int, offset: int = 0) -> EvalPoint:
    """Base ``q^l`` at argument ``(x + offset) / l``.

    ``(q^l)^{(x+offset)/l} = q^{x+offset}``, so the new tau is
    ``tau * q^offset`` and no irrational power ever appears.
    """
    if l < 1 or l % 2 == 0:
        raise DomainError(f"l must be a positive odd integer, got {l}")
    if offset < 0:
        raise DomainError("offset must be nonnegative")
    return EvalPoint(pt.q**l, pt.tau * pt.q**offset)


def reflect_point(pt: EvalPoint, a: int = 1) -> EvalPoint:
    """Base ``q^{-1}`` at argument ``a - x``: ``(q^{-1})^{a-x} = tau q^{-a}``."""
    return EvalPoint(1 / pt.q, pt.tau / pt.q**a)


# -- classical (q -> 1) objects ---------------------------------------------


@lru_cache(maxsize=None)
def _classical_table(n: int) -> tuple[Fraction, ...]:
    # (e^t + 1) G(t) = 2  =>  sum_k C(n,k) E_k + E_n = 2 [n == 0]
    table: list[Fraction] = []
    for i in range(n + 1):
        acc = Fraction(2 if i == 0 else 0)
        acc -= sum(binomial(i, j) * table[j] for j in range(i))
        table.append(acc / 2)
    return tuple(table)


def classical_euler_number(n: int) -> Fraction:
    """Euler number ``E_n = E_n(0)`` with ``2/(e^t+1) = sum E_n t^n/n!``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return _classical_table(n)[n]


def classical_euler_poly(n: int, z: Any) -> Fraction:
    """Euler polynomial ``E_n(z) = sum_k C(n,k) E_k z^{n-k}``."""
    z = as_rational(z)
    table = _classical_table(n)
    return sum(
        (binomial(n, k) * table[k] * z ** (n - k) for k in range(n + 1)), Fraction(0)
    )


def _series_mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    return [
        sum((a[i] * b[j - i] for i in range(j + 1)), Fraction(0)) for j in range(n + 1)
    ]


def _series_inverse(a: Sequence[Fraction], n: int) -> list[Fraction]:
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv = [1 / Fraction(a[0])]
    for j in range(1, n + 1):
        acc = sum((a[i] * inv[j - i] for i in range(1, j + 1)), Fraction(0))
        inv.append(-acc / a[0])
    return inv


def classical_euler_higher(n: int, k: int) -> Fraction:
    """``E^{(k)}_n`` from ``(2/(e^t+1))^k``, by power-series inversion.

    Deliberately independent of the recurrence behind
    :func:`classical_euler_number`.
    """
    if n < 0 or k < 0:
        raise DomainError("n and k must be >= 0")
    denom = [Fraction(1, factorial(j)) for j in range(n + 1)]
    denom[0] += 1
    g = [2 * c for c in _series_inverse(denom, n)]
    acc = [Fraction(1)] + [Fraction(0)] * n
    for _ in range(k):
        acc = _series_mul(acc, g, n)
    return acc[n] * factorial(n)


def series_coefficient(m: int, h: int, k: int, pt: EvalPoint) -> Any:
    """``m! [t^m]`` of the generating function

        [2]_q^k e^{t/(1-q)} sum_j (-1)^j tau^j t^j / ((-q^{j+h}:q^{-1})_k (1-q)^j j!)

    computed as a truncated Cauchy product of the two factors.
    """
    _check_degree(m, k)
    q, tau = pt.q, pt.tau
    reject_poles(q, denominator_support(m, h, k))
    c = 1 / (1 - q)
    expo = [c**j / factorial(j) for j in range(m + 1)]
    inner = [
        (-tau) ** j * c**j / factorial(j) / q_shifted_factorial(-(q ** (j + h)), 1 / q, k)
        for j in range(m + 1)
    ]
    coeff = sum((expo[m - j] * inner[j] for j in range(m + 1)), Fraction(0))
    return (1 + q) ** k * coeff * factorial(m)
