"""The q-Euler zeta function and its generating function in double precision.

    zeta(s, x) = [2]_q sum_{n>=0} (-1)^n q^{nh} / [n+x]_q^s,   |q| < 1, h >= 1,
    F_q(t, x)  = [2]_q sum_{n>=0} (-1)^n q^{nh} exp([n+x]_q t).

Both series are truncated once a geometric bound on the tail drops below the
requested absolute tolerance.  Terms are accumulated in ascending ``n``.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from scipy import integrate

from qeuler.euler import q_euler
from qeuler.qcore import DomainError

__all__ = [
    "BranchError",
    "InterpolationCheck",
    "MellinCheck",
    "SeriesConfig",
    "SeriesResult",
    "TruncationError",
    "gen_fn",
    "gen_fn_series",
    "interpolation_check",
    "mellin_check",
    "zeta_csv",
    "zeta_eq",
    "zeta_series",
]


class TruncationError(ArithmeticError):
    """The tail bound did not reach the tolerance within ``max_terms``."""

    def __init__(self, message: str, bound: float):
        super().__init__(message)
        self.bound = bound


class BranchError(DomainError):
    """A q-bracket falls on the branch cut of the principal logarithm."""


@dataclass(frozen=True)
class SeriesConfig:
    eps: float = 1e-16
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.eps > 0:
            raise DomainError("eps must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    n_terms: int
    tail_bound: float


def _check_q(q: complex) -> complex:
    q = complex(q)
    if not (cmath.isfinite(q) and abs(q) < 1):
        raise DomainError(f"need |q| < 1, got q = {q}")
    if q == 0:
        raise DomainError("q must be nonzero")
    return q


def _check_finite(z: complex, what: str) -> complex:
    if not cmath.isfinite(z):
        raise OverflowError(f"{what} is not finite")
    return z


def _q_power(q: complex, a: float) -> complex:
    if q.imag == 0 and q.real > 0:
        return complex(q.real**a)
    return cmath.exp(a * cmath.log(q))


def _bracket(q: complex, a: float) -> complex:
    return (1 - _q_power(q, a)) / (1 - q)


def _bracket_power(b: complex, s: complex) -> complex:
    """``b^{-s}`` on the principal branch."""
    if b == 0:
        raise BranchError("q-bracket vanishes")
    if b.imag == 0 and b.real > 0:
        if s.imag == 0:
            return complex(b.real ** (-s.real))
        return cmath.exp(-s * math.log(b.real))
    if b.imag == 0 and b.real < 0:
        raise BranchError(f"q-bracket {b} lies on the negative real axis")
    if s.imag == 0 and float(s.real).is_integer():
        return b ** int(-s.real)
    return cmath.exp(-s * cmath.log(b))


def _check_x(x: float) -> float:
    x = float(x)
    if not 0 < x <= 1:
        raise DomainError(f"need 0 < x <= 1, got x = {x}")
    return x


def _check_h(h: int) -> int:
    if int(h) != h or h < 1:
        raise DomainError(f"need an integer h >= 1, got h = {h}")
    return int(h)


def _sum_ascending(terms: Sequence[complex]) -> complex:
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def _tail_factor(q: complex, x: float, n: int) -> tuple[float, float, float]:
    """Bounds valid for every index >= n.

    Returns (lower, upper) bounds on ``|[j+x]_q|`` and a bound on ``|arg [j+x]_q|``.
    """
    r = abs(q) ** (n + x)
    lower = (1 - r) / abs(1 - q)
    upper = (1 + r) / abs(1 - q)
    arg = abs(cmath.phase(1 / (1 - q))) + math.asin(min(r, 1.0))
    return lower, upper, arg


def zeta_series(
    s: complex, x: float, q: complex, h: int, cfg: SeriesConfig = DEFAULT_CONFIG
) -> SeriesResult:
    """Partial sum of the zeta series with its tail bound.

    Raises :class:`TruncationError` if the bound stays above ``cfg.eps`` for
    ``cfg.max_terms`` terms.
    """
    s = complex(s)
    q = _check_q(q)
    x = _check_x(x)
    h = _check_h(h)
    two = 1 + q
    qh = abs(q) ** h
    terms: list[complex] = []
    sign_qh = complex(1)
    bound = math.inf
    for n in range(cfg.max_terms):
        b = _bracket(q, n + x)
        terms.append(_check_finite(sign_qh * _bracket_power(b, s), "zeta term"))
        sign_qh *= -(q**h)
        lower, upper, arg = _tail_factor(q, x, n + 1)
        # |b^{-s}| = |b|^{-Re s} exp(Im s * arg b)
        mag = max(lower ** (-s.real), upper ** (-s.real)) if lower > 0 else math.inf
        mag *= math.exp(abs(s.imag) * arg)
        bound = abs(two) * qh ** (n + 1) * mag / (1 - qh)
        if bound < cfg.eps:
            value = two * _sum_ascending(terms)
            return SeriesResult(_check_finite(value, "zeta value"), n + 1, bound)
    raise TruncationError(
        f"tail bound {bound:.3e} above eps after {cfg.max_terms} terms", bound
    )


def zeta_eq(
    s: complex, x: float, q: complex, h: int, cfg: SeriesConfig = DEFAULT_CONFIG
) -> complex:
    """``zeta^h_{E,q}(s, x)``."""
    return zeta_series(s, x, q, h, cfg).value


def gen_fn_series(
    t: complex, x: float, q: complex, h: int, cfg: SeriesConfig = DEFAULT_CONFIG
) -> SeriesResult:
    """Partial sum of ``F_q(t, x)`` with its tail bound."""
    t = complex(t)
    q = _check_q(q)
    x = _check_x(x)
    if int(h) != h or h < 1:
        raise DomainError(f"the generating series needs integer h >= 1, got {h}")
    h = int(h)
    real_q = q.imag == 0 and q.real > 0
    two = 1 + q
    qh = abs(q) ** h
    terms: list[complex] = []
    sign_qh = complex(1)
    bound = math.inf
    for n in range(cfg.max_terms):
        b = _bracket(q, n + x)
        terms.append(_check_finite(sign_qh * cmath.exp(b * t), "generating term"))
        sign_qh *= -(q**h)
        lower, upper, _ = _tail_factor(q, x, n + 1)
        if real_q:
            # brackets are real and lie in [lower, upper)
            growth = max(lower * t.real, upper * t.real)
        else:
            growth = upper * abs(t)
        bound = abs(two) * qh ** (n + 1) * math.exp(growth) / (1 - qh)
        if bound < cfg.eps:
            value = two * _sum_ascending(terms)
            return SeriesResult(_check_finite(value, "generating value"), n + 1, bound)
    raise TruncationError(
        f"tail bound {bound:.3e} above eps after {cfg.max_terms} terms", bound
    )


def gen_fn(
    t: complex, x: float, q: complex, h: int, cfg: SeriesConfig = DEFAULT_CONFIG
) -> complex:
    """``F_q(t, x) = sum_n E^{(h,1)}_{n,q}(x) t^n / n!``."""
    return gen_fn_series(t, x, q, h, cfg).value


@dataclass(frozen=True)
class InterpolationCheck:
    series_value: float
    closed_value: float
    abs_diff: float
    closed_error_bound: float


def _tau_sensitivity(m: int, h: int, q: Fraction, tau: Fraction) -> Fraction:
    # |d E / d tau| for E = [2]/(1-q)^m sum_j C(m,j) (-tau)^j / (1 + q^{j+h})
    total = Fraction(0)
    for j in range(1, m + 1):
        total += math.comb(m, j) * j * abs(tau) ** (j - 1) / abs(1 + q ** (j + h))
    return abs(1 + q) / abs(1 - q) ** m * total


def interpolation_check(
    m: int, x: Any, q: Any, h: int, cfg: SeriesConfig = DEFAULT_CONFIG
) -> InterpolationCheck:
    """Compare the series at ``s = -m`` with the exact order-one closed form.

    The closed form is evaluated exactly at the rational value of the double
    ``q`` the series uses.  For integer ``x`` it is exact; otherwise ``q^x`` is
    rounded once and ``closed_error_bound`` bounds the effect of that rounding.
    """
    if m < 0:
        raise DomainError("m must be >= 0")
    qf = float(q)
    xf = float(x)
    if not 0 < qf < 1:
        raise DomainError(f"need real q in (0, 1), got {q}")
    series = zeta_series(-m, xf, qf, h, cfg)
    q_exact = Fraction(qf)
    if xf.is_integer():
        tau = q_exact ** int(xf)
        err = 0.0
    else:
        tau_float = math.exp(xf * math.log(qf))
        tau = Fraction(tau_float)
        # exp/log of doubles: a few ulps of relative error
        dtau = Fraction(4 * math.ulp(tau_float))
        err = float(_tau_sensitivity(m, h, q_exact, tau) * dtau)
    closed = float(q_euler(m, h, 1, q_exact, tau))
    value = series.value.real
    return InterpolationCheck(value, closed, abs(value - closed), err)


@dataclass(frozen=True)
class MellinCheck:
    quadrature_value: float
    series_value: float
    abs_diff: float
    cutoff: float


def mellin_check(
    s: float,
    x: float,
    q: float,
    h: int,
    cfg: SeriesConfig = SeriesConfig(eps=1e-13),
) -> MellinCheck:
    """``(1/Gamma(s)) int_0^inf t^{s-1} F_q(-t, x) dt`` against the series.

    The integral is cut at ``T`` where the bound
    ``[2]_q e^{-[x]_q T} T^{s-1} / (Gamma(s) [x]_q (1 - q^h))`` on the tail
    falls below ``eps/2``; for ``s < 1`` the substitution ``t = u^{1/s}``
    removes the endpoint singularity.
    """
    s = float(s)
    if not s > 0:
        raise DomainError("the integral representation needs s > 0")
    qf = float(q)
    if not 0 < qf < 1:
        raise DomainError(f"need real q in (0, 1), got {q}")
    x = _check_x(x)
    h = _check_h(h)
    eps = cfg.eps
    two = 1 + qf
    bx = (1 - qf**x) / (1 - qf)
    gamma_s = math.gamma(s)

    def tail(T: float) -> float:
        # for s > 1 the incomplete gamma tail is at most twice the leading term
        # once T >= 2 (s - 1) / [x]_q
        factor = 2.0 if s > 1 else 1.0
        return factor * two * math.exp(-bx * T) * T ** (s - 1) / (gamma_s * bx * (1 - qf**h))

    T = max(1.0, 2 * (s - 1) / bx)
    while tail(T) >= eps / 2:
        T *= 1.25

    def f(t: float) -> float:
        return gen_fn(-t, x, qf, h, cfg).real

    opts = dict(epsabs=eps / 4, epsrel=1e-13, limit=500)
    if s < 1:
        value, err = integrate.quad(lambda u: f(u ** (1 / s)) / s, 0, T**s, **opts)
    else:
        value, err = integrate.quad(lambda t: t ** (s - 1) * f(t), 0, T, **opts)
    if not math.isfinite(value) or err > max(1e-8, 1e3 * eps):
        raise TruncationError(f"quadrature error estimate {err:.3e} too large", err)
    quad_value = value / gamma_s
    series = zeta_series(s, x, qf, h, cfg).value.real
    return MellinCheck(quad_value, series, abs(quad_value - series), T)


def zeta_csv(rows: Sequence[dict]) -> str:
    """CSV: s_re, s_im, x, q, h, value_re, value_im, n_terms, tail_bound."""
    buf = io.StringIO()
    cols = ["s_re", "s_im", "x", "q", "h", "value_re", "value_im", "n_terms", "tail_bound"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def _fmt(v: Any) -> str:
    if isinstance(v, complex):
        return repr(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)
