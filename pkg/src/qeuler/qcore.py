"""Exact rational scalars and the q-analog primitives.

Every evaluator in the package works over exact field elements.  In practice
that means :class:`fractions.Fraction`; the functions here only use ring
operations and comparisons against integer constants, so any exact scalar
type with the same operators can be threaded through (the degree tracker in
:mod:`qeuler.certify` relies on this).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Any

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "EvalPoint",
    "PoleError",
    "as_rational",
    "binomial",
    "check_q",
    "denominator_support",
    "format_rational",
    "parse_rational",
    "q_bracket_int",
    "q_bracket_tau",
    "q_shifted_factorial",
    "reject_poles",
]


class DomainError(ValueError):
    """A parameter lies outside the domain of the requested quantity."""


class PoleError(DomainError):
    """The evaluation point makes a closed-form denominator vanish."""

    def __init__(self, exponent: int, message: str | None = None):
        self.exponent = exponent
        super().__init__(message or f"1 + q^{exponent} vanishes at this q")


class BudgetExceeded(RuntimeError):
    """The requested computation would exceed the configured operation budget."""


def as_rational(x: Any) -> Any:
    """Coerce ints and ``"num/den"`` strings to Fraction.

    Fractions and other exact scalar objects pass through unchanged.  Floats
    are refused: this layer never rounds.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, (float, complex)):
        raise TypeError(f"exact arithmetic only, got {type(x).__name__} {x!r}")
    return x


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or a plain integer into a reduced Fraction."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {text!r}") from None
    except ValueError:
        raise ValueError(f"not a rational of the form num/den: {text!r}") from None


def format_rational(r: Any) -> str:
    """Serialize an exact rational as ``"num/den"`` in lowest terms."""
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def check_q(q: Any) -> Any:
    """Validate a base ``q``: it must avoid 0, 1 and -1.

    Every closed form divides by ``1 - q`` and by ``1 + q``, and uses
    negative powers of ``q``.
    """
    q = as_rational(q)
    if q == 0:
        raise DomainError("q must be nonzero")
    if q == 1:
        raise DomainError("q must differ from 1")
    if q == -1:
        raise DomainError("q must differ from -1")
    return q


@dataclass(frozen=True)
class EvalPoint:
    """A base ``q`` together with ``tau``, which stands in for ``q**x``.

    The polynomial argument ``x`` never appears directly; every closed form
    depends on it only through powers of ``q**x``.
    """

    q: Any
    tau: Any

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.q))
        tau = as_rational(self.tau)
        if tau == 0:
            raise DomainError("tau (the value of q^x) must be nonzero")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def at(cls, q: Any, n: int) -> "EvalPoint":
        """The point for an integer argument ``x = n``."""
        q = check_q(q)
        return cls(q, q**n)

    def shifted(self, n: int) -> "EvalPoint":
        """The point for argument ``x + n``."""
        return EvalPoint(self.q, self.tau * self.q**n)


def q_bracket_int(n: int, q: Any) -> Any:
    """``[n]_q = (1 - q^n) / (1 - q)`` for any integer ``n``."""
    q = check_q(q)
    return (1 - q**n) / (1 - q)


def q_bracket_tau(pt: EvalPoint) -> Any:
    """``[x]_q`` recovered from ``tau = q^x``."""
    return (1 - pt.tau) / (1 - pt.q)


def q_shifted_factorial(a: Any, base: Any, n: int) -> Any:
    """``(a : base)_n``, the product of ``1 - a*base**i`` for ``0 <= i < n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = Fraction(1)
    term = a
    for _ in range(n):
        out = out * (1 - term)
        term = term * base
    return out


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or k > n or n < 0:
        return 0
    return comb(n, k)


def denominator_support(m: int, h: int, k: int) -> set[int]:
    """Exponents ``e`` for which the index ``(m, h, k)`` divides by ``1 + q^e``."""
    return {h + l - i for l in range(m + 1) for i in range(k)}


def reject_poles(q: Any, exponents) -> None:
    """Raise :class:`PoleError` if ``1 + q^e`` vanishes for some listed ``e``."""
    for e in sorted(exponents):
        if 1 + q**e == 0:
            raise PoleError(e)
