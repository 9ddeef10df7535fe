"""Degree certificates that upgrade grid agreement to identity-level proof.

Every registry identity is a rational-function identity in ``q`` and ``tau``
(and ``tau2`` where present).  Running an identity's code on
:class:`DegreeBound` scalars instead of rationals yields a representation
``lhs - rhs = P / Q`` together with bounds on the degree of ``P`` in each
variable.  If ``P`` vanishes on a tensor grid with more points per variable
than its degree bound, ``P`` is the zero polynomial.

The representation is never reduced, so the bounds are generous; ``Q`` is
nonzero at a grid point exactly when the exact evaluation there performs no
division by zero, which :func:`certify` observes directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational

from qeuler.identities import REGISTRY, verify

__all__ = ["Certificate", "DegreeBound", "certify", "degree_bound"]

VARIABLES = ("q", "tau", "tau2")


class DegreeBound:
    """Formal ``P/Q`` tracked only through per-variable degree bounds."""

    __slots__ = ("num", "den")

    def __init__(self, num: tuple[int, ...], den: tuple[int, ...]):
        self.num = num
        self.den = den

    @classmethod
    def variable(cls, index: int, nvars: int = len(VARIABLES)) -> "DegreeBound":
        num = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(num, (0,) * nvars)

    @classmethod
    def constant(cls, nvars: int = len(VARIABLES)) -> "DegreeBound":
        return cls((0,) * nvars, (0,) * nvars)

    def _lift(self, other):
        if isinstance(other, DegreeBound):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return DegreeBound.constant(len(self.num))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not isinstance(other, DegreeBound):
            # P + cQ over the same Q
            return DegreeBound(tuple(map(max, self.num, self.den)), self.den)
        num = tuple(
            max(a + d, c + b) for a, b, c, d in zip(self.num, self.den, o.num, o.den)
        )
        return DegreeBound(num, tuple(map(int.__add__, self.den, o.den)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + other

    __rsub__ = __add__

    def __neg__(self):
        return self

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DegreeBound(
            tuple(map(int.__add__, self.num, o.num)),
            tuple(map(int.__add__, self.den, o.den)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DegreeBound(
            tuple(map(int.__add__, self.num, o.den)),
            tuple(map(int.__add__, self.den, o.num)),
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        num, den = (self.num, self.den) if n >= 0 else (self.den, self.num)
        n = abs(n)
        return DegreeBound(tuple(n * a for a in num), tuple(n * b for b in den))

    def __eq__(self, other):
        # never equal to a number: pole and domain checks compare against
        # integer constants and must pass through
        if isinstance(other, DegreeBound):
            return self.num == other.num and self.den == other.den
        return False

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"DegreeBound(num={self.num}, den={self.den})"


def degree_bound(ident_id: str, fixed: dict) -> dict[str, int]:
    """Per-variable degree bounds of the numerator of ``lhs - rhs``."""
    ident = REGISTRY[ident_id]
    args = dict(fixed)
    for index, name in enumerate(VARIABLES):
        if name in ident.params:
            args[name] = DegreeBound.variable(index)
    lhs, rhs = ident.sides(**{p: args[p] for p in ident.params})
    diff = lhs - rhs
    if not isinstance(diff, DegreeBound):
        return {}
    return {
        name: diff.num[index]
        for index, name in enumerate(VARIABLES)
        if name in ident.params
    }


@dataclass(frozen=True)
class Certificate:
    id: str
    params: dict
    degrees: dict
    points: int
    passed: bool


def _values(name: str, count: int) -> list[Fraction]:
    # q in {2, 3, ...} keeps every 1 - q, 1 + q^e and q^e nonzero
    start = 2 if name == "q" else 1
    return [Fraction(start + i) for i in range(count)]


def certify(ident_id: str, fixed: dict) -> Certificate:
    """Prove ``ident_id`` as a rational-function identity for fixed integers.

    ``fixed`` holds the integer parameters (``m, h, k, l, i`` as applicable).
    """
    ident = REGISTRY[ident_id]
    degrees = degree_bound(ident_id, fixed)
    names = [n for n in VARIABLES if n in ident.params]
    axes = [_values(n, degrees[n] + 1) for n in names]
    points = 0
    for combo in product(*axes):
        params = dict(fixed)
        params.update(zip(names, combo))
        report = verify(ident_id, params)
        points += 1
        if not report.passed:
            return Certificate(ident_id, dict(fixed), degrees, points, False)
    return Certificate(ident_id, dict(fixed), degrees, points, True)
