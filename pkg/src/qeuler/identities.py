"""Registry of exact identities among the q-Euler families.

Each entry evaluates both sides of one identity at a parameter record and
compares them as exact rationals.  Entries whose id ends in ``-literal``
encode a statement as printed at the source before an index or factor
correction; they are expected to fail somewhere and are excluded from the
default run.

Parameters are ``m, h, k, l, i`` (integers), ``q`` and ``tau`` (rationals,
``tau`` standing for ``q^x``) and ``tau2`` (``q^y`` for a second argument).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Iterator, Sequence

from qeuler.euler import (
    classical_euler_higher,
    classical_euler_number,
    euler_poly_0k,
    euler_poly_h1,
    fermionic_moment,
    q_euler,
    rebase_point,
    reflect_point,
    series_coefficient,
)
from qeuler.qcore import (
    DomainError,
    EvalPoint,
    binomial,
    check_q,
    format_rational,
    q_shifted_factorial,
)

__all__ = [
    "DEFAULT_GRID",
    "Grid",
    "Identity",
    "IdentityReport",
    "ParameterRejected",
    "REGISTRY",
    "enumerate_params",
    "report_lines",
    "run_registry",
    "verify",
]

PARAM_ORDER = ("m", "h", "k", "l", "i", "q", "tau", "tau2")


class ParameterRejected(DomainError):
    """Parameters violate an identity's hypotheses or hit a pole."""


@dataclass(frozen=True)
class Identity:
    id: str
    title: str
    params: tuple[str, ...]
    sides: Callable[..., tuple[Any, Any]]
    hypothesis: Callable[..., bool] = lambda **_: True
    erratum: str | None = None
    literal: bool = False


@dataclass(frozen=True)
class IdentityReport:
    id: str
    params: dict
    lhs: Any
    rhs: Any
    passed: bool
    erratum: str | None = None

    def to_json(self) -> dict:
        params = {}
        for key, value in self.params.items():
            params[key] = value if isinstance(value, int) else format_rational(value)
        return {
            "id": self.id,
            "params": params,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "pass": self.passed,
            "erratum": self.erratum,
        }


# -- shorthand used by the identity bodies ----------------------------------

E = q_euler


def _two(q):
    return 1 + q


def _bracket(q, tau):
    return (1 - tau) / (1 - q)


def _neg_bracket_l(q, l):
    # [l]_{-q}
    return (1 - (-q) ** l) / (1 + q)


def _poch(q, top, k):
    # (-q^top : q^{-1})_k
    return q_shifted_factorial(-(q**top), 1 / q, k)


def _multi_sum(k, l, weight, term):
    total = Fraction(0)
    for idx in product(range(l), repeat=k):
        total = total + weight(idx) * (-1) ** sum(idx) * term(sum(idx))
    return total


# -- weight-h numbers -------------------------------------------------------


def _p1a(m, k, q, start=0):
    lhs = sum(
        (binomial(m, j) * (q - 1) ** j * E(j, 0, k + 1, q) for j in range(start, m + 1)),
        Fraction(0),
    )
    return lhs, _two(q) ** (k + 1) / _poch(q, m, k + 1)


def _hrec(m, h, k, q):
    return E(m, h, k, q), E(m, h - 1, k, q) + (q - 1) * E(m + 1, h - 1, k, q)


def _mix(m, h, k, i, q):
    lhs = sum(
        (binomial(i, j) * (q - 1) ** j * E(m - i + j, h - 1, k, q) for j in range(i + 1)),
        Fraction(0),
    )
    rhs = sum(
        (binomial(i - 1, j) * (q - 1) ** j * E(m + j - i, h, k, q) for j in range(i)),
        Fraction(0),
    )
    return lhs, rhs


def _mom(m, h, q):
    lhs = sum(
        (binomial(m, j) * (q - 1) ** j * E(j, h, 1, q) for j in range(m + 1)), Fraction(0)
    )
    return lhs, _two(q) / (1 + q ** (m + h))


def _e4(m, k, q):
    lhs = sum(
        (binomial(m, j) * (q - 1) ** j * E(j, 0, k, q) for j in range(m + 1)), Fraction(0)
    )
    return lhs, _two(q) ** k / _poch(q, m, k)


# -- weight-zero polynomials ------------------------------------------------


def _l2(m, k, q, tau):
    lhs = sum(
        (binomial(m, j) * (q - 1) ** j * E(j, 0, k, q, tau) for j in range(m + 1)),
        Fraction(0),
    )
    return lhs, tau**m * _two(q) ** k / _poch(q, m, k)


def _e5(m, k, q, tau):
    lhs = (q - 1) ** m * euler_poly_0k(m, k, EvalPoint(q, tau))
    rhs = _two(q) ** k * sum(
        (
            binomial(m, j) * tau**j * (-1) ** (m - j) / _poch(q, j, k)
            for j in range(m + 1)
        ),
        Fraction(0),
    )
    return lhs, rhs


def _t3(m, k, l, q, tau, scaled=False):
    pt = EvalPoint(q, tau**l if scaled else tau)
    lhs = E(m, 0, k, q, pt.tau)

    def weight(idx):
        return q ** (-sum((j - 1) * i_j for j, i_j in enumerate(idx, start=1)))

    def term(s):
        sub = rebase_point(pt, l, s)
        return E(m, 0, k, sub.q, sub.tau)

    ql = q**l
    prefactor = ((1 - ql) / (1 - q)) ** m / _neg_bracket_l(q, l) ** k
    return lhs, prefactor * _multi_sum(k, l, weight, term)


def _e0k_sign_literal(m, k, q, tau):
    # integrand weight q^{+sum j x_j} instead of q^{-sum j x_j}
    pt = EvalPoint(q, tau)
    return fermionic_moment(m, [j for j in range(1, k + 1)], pt), E(m, 0, k, q, tau)


def _e9(m, k, q, tau):
    rhs = sum(
        (
            binomial(m, i) * E(i, 0, k, q) * _bracket(q, tau) ** (m - i) * tau**i
            for i in range(m + 1)
        ),
        Fraction(0),
    )
    return E(m, 0, k, q, tau), rhs


def _e10(m, k, q, tau, tau2):
    rhs = sum(
        (
            binomial(m, j) * _bracket(q, tau2) ** (m - j) * tau2**j * E(j, 0, k, q, tau)
            for j in range(m + 1)
        ),
        Fraction(0),
    )
    return E(m, 0, k, q, tau * tau2), rhs


# -- order-one polynomials (fast path evaluator) ----------------------------


def _e1(m, h, q, tau=1):
    return euler_poly_h1(m, h, EvalPoint(q, tau))


def _e12(m, h, q, tau):
    lhs = tau * _e1(m, h, q, tau)
    return lhs, (q - 1) * _e1(m + 1, h - 1, q, tau) + _e1(m, h - 1, q, tau)


def _e13(m, h, q, tau):
    lhs = q**h * _e1(m, h, q, tau * q) + _e1(m, h, q, tau)
    return lhs, _two(q) * _bracket(q, tau) ** m


def _e14(m, h, q, literal=False):
    at_one = sum((binomial(m, j) * q**j * _e1(j, h, q) for j in range(m + 1)), Fraction(0))
    lhs = q**h * at_one + _e1(m, h, q)
    delta = 1 if m == 0 else 0
    return lhs, Fraction(delta) if literal else _two(q) * delta


def _t4(m, h, q, tau):
    pt = EvalPoint(q, tau)
    ref = reflect_point(pt)
    return euler_poly_h1(m, h, ref), (-1) ** m * q ** (m + h - 1) * euler_poly_h1(m, h, pt)


def _e16(m, h, q):
    return _e1(m, h, 1 / q), (-1) ** (m - 1) * q ** (m - 1) * _e1(m, h, q)


def _t5(m, h, l, q, tau, scaled=False):
    pt = EvalPoint(q, tau**l if scaled else tau)
    lhs = euler_poly_h1(m, h, pt)
    total = Fraction(0)
    for i in range(l):
        total = total + q ** (h * i) * (-1) ** i * euler_poly_h1(m, h, rebase_point(pt, l, i))
    ql = q**l
    return lhs, _two(q) / (1 + ql) * ((1 - ql) / (1 - q)) ** m * total


# -- general (h, k) polynomials ---------------------------------------------


def _e17(m, h, k, q, tau):
    rhs = sum(
        (
            binomial(m, j) * (-1) ** (m - j) * tau**j * _two(q) ** k / _poch(q, j + h, k)
            for j in range(m + 1)
        ),
        Fraction(0),
    )
    return (q - 1) ** m * E(m, h, k, q, tau), rhs


def _e18(m, h, k, q, tau):
    lhs = q**h * E(m, h, k, q, tau * q) + E(m, h, k, q, tau)
    return lhs, _two(q) * E(m, h - 1, k - 1, q, tau)


def _e19(m, h, k, q, tau):
    lhs = tau * E(m, h + 1, k, q, tau)
    return lhs, (q - 1) * E(m + 1, h, k, q, tau) + E(m, h, k, q, tau)


def _t6(m, h, k, l, q, tau):
    pt = EvalPoint(q, tau**l)

    def weight(idx):
        return q ** (h * sum(idx) - sum((j - 1) * i_j for j, i_j in enumerate(idx, start=1)))

    def term(s):
        sub = rebase_point(pt, l, s)
        return E(m, h, k, sub.q, sub.tau)

    ql = q**l
    prefactor = ((1 - ql) / (1 - q)) ** m / _neg_bracket_l(q, l) ** k
    return E(m, h, k, q, pt.tau), prefactor * _multi_sum(k, l, weight, term)


# -- the h = k family -------------------------------------------------------


def _e0k(k, q):
    return E(0, k, k, q), _two(q) ** k / _poch(q, k, k)


def _e21(m, k, q, tau):
    return _e17(m, k, k, q, tau)


def _e22(m, k, q, tau):
    pt = EvalPoint(q, tau)
    ref = reflect_point(pt, k)
    return E(m, k, k, ref.q, ref.tau), (-1) ** m * q ** (m + binomial(k, 2)) * E(m, k, k, q, tau)


def _e23(m, k, q):
    return E(m, k, k, 1 / q), (-1) ** m * q ** (m + binomial(k, 2)) * E(m, k, k, q, q**k)


def _e24(m, k, q, tau):
    lhs = q**k * E(m, k, k, q, tau * q) + E(m, k, k, q, tau)
    return lhs, _two(q) * E(m, k - 1, k - 1, q, tau)


def _e25(m, k, q):
    return _e17(m, k, k, q, Fraction(1))


def _e26(m, k, q):
    lhs = sum(
        (binomial(m, i) * (q - 1) ** i * E(i, k, k, q) for i in range(m + 1)), Fraction(0)
    )
    return lhs, _two(q) ** k / _poch(q, m + k, k)


def _e27(m, k, q, tau):
    rhs = sum(
        (
            binomial(m, j) * tau**j * E(j, k, k, q) * _bracket(q, tau) ** (m - j)
            for j in range(m + 1)
        ),
        Fraction(0),
    )
    return E(m, k, k, q, tau), rhs


def _e28(m, k, q):
    at_one = sum((binomial(m, j) * q**j * E(j, k, k, q) for j in range(m + 1)), Fraction(0))
    return q**k * at_one + E(m, k, k, q), _two(q) * E(m, k - 1, k - 1, q)


# -- generating function and convolutions -----------------------------------


def _gf29(m, h, k, q, tau):
    return series_coefficient(m, h, k, EvalPoint(q, tau)), E(m, h, k, q, tau)


def _e30(m, h, k, q, tau):
    lhs = q ** (h - k) * E(m, h, k + 1, q, tau * q)
    return lhs, _two(q) * E(m, h, k, q, tau) - E(m, h, k + 1, q, tau)


def _e31(m, k, q, tau):
    rhs = sum(
        (
            binomial(m, j) * tau**j * E(j, 1, 1, q) * E(m - j, k + j, k - 1, q, tau)
            for j in range(m + 1)
        ),
        Fraction(0),
    )
    return E(m, k, k, q, tau), rhs


def _e32(m, k, q):
    return _e31(m, k, q, Fraction(1))


def _e33(m, h, q):
    rhs = sum(
        (binomial(h, j) * (q - 1) ** j * E(m + j, 1, 1, q) for j in range(h + 1)),
        Fraction(0),
    )
    return E(m, h + 1, 1, q), rhs


def _e34(m, q):
    rhs = Fraction(0)
    for j in range(m + 1):
        inner = sum(
            (
                binomial(j + 1, i) * (q - 1) ** i * E(m - j + i, 1, 1, q)
                for i in range(j + 2)
            ),
            Fraction(0),
        )
        rhs = rhs + binomial(m, j) * E(j, 1, 1, q) * inner
    return E(m, 2, 2, q), rhs


def _t7(m, k, q, tau):
    rhs = sum(
        (
            binomial(m, j) * tau**j * E(m - j, k + j, 1, q, tau) * E(j, k - 1, k - 1, q)
            for j in range(m + 1)
        ),
        Fraction(0),
    )
    return E(m, k, k, q, tau), rhs


def _e36(m, k, q, literal=False):
    rhs = Fraction(0)
    for j in range(m + 1):
        if literal:
            # inner index printed as j: it rebinds j, and the free i is read as
            # that same inner index
            inner = sum(
                (
                    (q - 1) ** t * binomial(k + t - 1, t) * E(m, 1, 1, q)
                    for t in range(k + j + 1)
                ),
                Fraction(0),
            )
        else:
            inner = sum(
                (
                    binomial(k + j - 1, i) * (q - 1) ** i * E(m - j + i, 1, 1, q)
                    for i in range(k + j)
                ),
                Fraction(0),
            )
        rhs = rhs + binomial(m, j) * E(j, k - 1, k - 1, q) * inner
    return E(m, k, k, q), rhs


def _cl2(m):
    rhs = sum(
        (
            binomial(m, j) * classical_euler_number(j) * classical_euler_number(m - j)
            for j in range(m + 1)
        ),
        Fraction(0),
    )
    return classical_euler_higher(m, 2), rhs


_SWAP_BASE = "the base printed as q-1 is read as q^{-1}"

REGISTRY: dict[str, Identity] = {
    ident.id: ident
    for ident in [
        Identity(
            "P1a",
            "binomial moment of weight-zero numbers of order k+1",
            ("m", "k", "q"),
            _p1a,
            erratum="summation starts at j=0; see E2-literal",
        ),
        Identity(
            "E2-literal",
            "binomial moment with summation starting at j=1 as printed",
            ("m", "k", "q"),
            lambda m, k, q: _p1a(m, k, q, start=1),
            erratum="the j=0 term is dropped; fails whenever E^{(0,k+1)}_0 != 0",
            literal=True,
        ),
        Identity("HREC", "weight recurrence in h", ("m", "h", "k", "q"), _hrec),
        Identity(
            "MIX",
            "mixed-index recurrence",
            ("m", "h", "k", "i", "q"),
            _mix,
            hypothesis=lambda m, i, **_: 1 <= i <= m,
        ),
        Identity("MOM", "binomial moment of order-one numbers", ("m", "h", "q"), _mom),
        Identity("E4", "binomial moment of weight-zero numbers", ("m", "k", "q"), _e4),
        Identity("L2", "binomial moment of weight-zero polynomials", ("m", "k", "q", "tau"), _l2),
        Identity("E5", "weight-zero closed form, signed rearrangement", ("m", "k", "q", "tau"), _e5),
        Identity(
            "E0K-sign-literal",
            "weight-zero polynomials with integrand weight q^{+sum j x_j}",
            ("m", "k", "q", "tau"),
            _e0k_sign_literal,
            erratum="the weight sign must be negative to match the closed form",
            literal=True,
        ),
        Identity(
            "T3a",
            "multiplication formula, argument (x+sum i)/l",
            ("m", "k", "l", "q", "tau"),
            _t3,
        ),
        Identity(
            "T3b",
            "multiplication formula, argument lx",
            ("m", "k", "l", "q", "tau"),
            lambda **p: _t3(**p, scaled=True),
        ),
        Identity(
            "E9",
            "expansion in [x]_q",
            ("m", "k", "q", "tau"),
            _e9,
            erratum="mixed summation indices unified",
        ),
        Identity(
            "E10",
            "addition formula",
            ("m", "k", "q", "tau", "tau2"),
            _e10,
            erratum="exponent m-i read as m-j",
        ),
        Identity("E12", "order-one weight recurrence at x", ("m", "h", "q", "tau"), _e12),
        Identity("E13", "order-one translation relation", ("m", "h", "q", "tau"), _e13),
        Identity(
            "E14c",
            "order-one translation relation at x=0",
            ("m", "h", "q"),
            _e14,
            erratum="right side is [2]_q delta_{m,0}; see E14-literal",
        ),
        Identity(
            "E14-literal",
            "order-one translation relation at x=0 as printed",
            ("m", "h", "q"),
            lambda m, h, q: _e14(m, h, q, literal=True),
            erratum="printed right side delta omits the factor [2]_q; fails at m=0",
            literal=True,
        ),
        Identity(
            "T4",
            "complementary formula for order one",
            ("m", "h", "q", "tau"),
            _t4,
            erratum=_SWAP_BASE,
        ),
        Identity(
            "E16",
            "complementary formula at x=1",
            ("m", "h", "q"),
            _e16,
            hypothesis=lambda m, **_: m >= 1,
            erratum=_SWAP_BASE,
        ),
        Identity(
            "T5a",
            "order-one multiplication formula, argument (x+i)/l",
            ("m", "h", "l", "q", "tau"),
            _t5,
        ),
        Identity(
            "T5b",
            "order-one multiplication formula, argument lx",
            ("m", "h", "l", "q", "tau"),
            lambda **p: _t5(**p, scaled=True),
        ),
        Identity("E17", "general closed form, signed rearrangement", ("m", "h", "k", "q", "tau"), _e17),
        Identity("E18", "translation relation lowering (h, k)", ("m", "h", "k", "q", "tau"), _e18),
        Identity("E19", "weight recurrence at x", ("m", "h", "k", "q", "tau"), _e19),
        Identity(
            "T6", "distribution formula", ("m", "h", "k", "l", "q", "tau"), _t6
        ),
        Identity("E0K", "order-k number of degree zero", ("k", "q"), _e0k),
        Identity("E21", "h=k closed form, signed rearrangement", ("m", "k", "q", "tau"), _e21),
        Identity("E22", "h=k complementary formula", ("m", "k", "q", "tau"), _e22),
        Identity("E23", "h=k complementary formula at x=k", ("m", "k", "q"), _e23),
        Identity("E24", "h=k translation relation", ("m", "k", "q", "tau"), _e24),
        Identity("E25", "h=k numbers, signed rearrangement", ("m", "k", "q"), _e25),
        Identity("E26", "h=k binomial moment", ("m", "k", "q"), _e26),
        Identity(
            "E27",
            "h=k symbolic binomial expansion",
            ("m", "k", "q", "tau"),
            _e27,
            hypothesis=lambda m, **_: m >= 1,
        ),
        Identity("E28", "h=k translation relation at x=0", ("m", "k", "q"), _e28),
        Identity(
            "GF29",
            "generating-function coefficient",
            ("m", "h", "k", "q", "tau"),
            _gf29,
            erratum="coefficients are the polynomials at tau=q^x",
        ),
        Identity("E30", "translation relation raising the order", ("m", "h", "k", "q", "tau"), _e30),
        Identity("E31", "convolution against order-one numbers", ("m", "k", "q", "tau"), _e31),
        Identity(
            "E32c",
            "convolution at x=0",
            ("m", "k", "q"),
            _e32,
            erratum="summation and summand indices unified to j",
        ),
        Identity(
            "E33",
            "weight shift as binomial sum of q-Euler numbers",
            ("m", "h", "q"),
            _e33,
            hypothesis=lambda h, **_: h >= 0,
        ),
        Identity("E34", "order-two double convolution", ("m", "q"), _e34),
        Identity("T7", "convolution against order k-1 numbers", ("m", "k", "q", "tau"), _t7),
        Identity(
            "E36c",
            "convolution at x=0 expanded",
            ("m", "k", "q"),
            _e36,
            erratum="inner sum runs i=0..k+j-1; see E36-literal",
        ),
        Identity(
            "E36-literal",
            "convolution at x=0 with the printed inner index",
            ("m", "k", "q"),
            lambda m, k, q: _e36(m, k, q, literal=True),
            erratum="inner summation index clashes with the outer j",
            literal=True,
        ),
        Identity("CL2", "classical order-two convolution", ("m",), _cl2),
    ]
}


# -- grids and execution ----------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """Parameter grid; ``tau`` runs over ``q**n`` for ``n`` in ``tau_powers``."""

    ms: tuple[int, ...] = tuple(range(7))
    hs: tuple[int, ...] = tuple(range(-1, 5))
    ks: tuple[int, ...] = (1, 2, 3)
    ls: tuple[int, ...] = (1, 3, 5)
    qs: tuple[Fraction, ...] = field(
        default=(Fraction(2), Fraction(1, 2), Fraction(3, 5), Fraction(4), Fraction(5, 3))
    )
    tau_powers: tuple[int, ...] = (0, 1, 2, -1)

    def valid_qs(self) -> list[Fraction]:
        out = []
        for q in self.qs:
            try:
                out.append(check_q(q))
            except DomainError:
                continue
        return out


DEFAULT_GRID = Grid()


def enumerate_params(ident: Identity, grid: Grid) -> Iterator[dict]:
    """Parameter records for ``ident`` in lexicographic order."""
    names = ident.params
    qs = sorted(grid.valid_qs())

    def expand(pos: int, acc: dict) -> Iterator[dict]:
        if pos == len(names):
            if ident.hypothesis(**acc):
                yield dict(acc)
            return
        name = names[pos]
        if name == "m":
            values = sorted(grid.ms)
        elif name == "h":
            values = sorted(grid.hs)
        elif name == "k":
            values = sorted(grid.ks)
        elif name == "l":
            values = sorted(grid.ls)
        elif name == "i":
            values = range(1, acc["m"] + 1)
        elif name == "q":
            values = qs
        elif name in ("tau", "tau2"):
            values = sorted({acc["q"] ** n for n in grid.tau_powers})
        else:  # pragma: no cover
            raise KeyError(name)
        for v in values:
            acc[name] = v
            yield from expand(pos + 1, acc)
        acc.pop(name, None)

    yield from expand(0, {})


def verify(ident_id: str, params: dict) -> IdentityReport:
    """Evaluate one identity exactly at ``params``.

    Raises :class:`ParameterRejected` if a hypothesis fails or a pole is hit,
    and :class:`KeyError` for an unknown id.
    """
    ident = REGISTRY[ident_id]
    missing = [p for p in ident.params if p not in params]
    if missing:
        raise ParameterRejected(f"{ident_id}: missing parameters {missing}")
    args = {p: params[p] for p in ident.params}
    for key in ("m", "h", "k", "l", "i"):
        if key in args and not isinstance(args[key], int):
            raise ParameterRejected(f"{ident_id}: {key} must be an integer")
    if "l" in args and (args["l"] < 1 or args["l"] % 2 == 0):
        raise ParameterRejected(f"{ident_id}: l must be a positive odd integer")
    if "k" in args and args["k"] < 1:
        raise ParameterRejected(f"{ident_id}: k must be >= 1")
    if "m" in args and args["m"] < 0:
        raise ParameterRejected(f"{ident_id}: m must be >= 0")
    if not ident.hypothesis(**args):
        raise ParameterRejected(f"{ident_id}: hypothesis fails at {args}")
    try:
        lhs, rhs = ident.sides(**args)
    except (DomainError, ZeroDivisionError) as exc:
        raise ParameterRejected(f"{ident_id}: {exc}") from exc
    return IdentityReport(ident_id, args, lhs, rhs, lhs == rhs, ident.erratum)


def _sort_key(report: IdentityReport):
    return (report.id, tuple(report.params.get(k, 0) for k in PARAM_ORDER))


def _run_one(ident_id: str, grid: Grid) -> list[IdentityReport]:
    out = []
    for params in enumerate_params(REGISTRY[ident_id], grid):
        try:
            out.append(verify(ident_id, params))
        except ParameterRejected:
            continue
    return out


def run_registry(
    grid: Grid = DEFAULT_GRID,
    ids: Sequence[str] | None = None,
    workers: int = 1,
) -> list[IdentityReport]:
    """Run the selected identities over ``grid``; sorted by id then params.

    Without ``ids`` every non-literal entry runs.  The result does not depend
    on ``workers``.
    """
    if ids is None:
        ids = [i for i, ident in REGISTRY.items() if not ident.literal]
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise KeyError(f"unknown identity ids: {unknown}")
    needs_q = any("q" in REGISTRY[i].params for i in ids)
    if not (grid.ms or grid.ks) or (needs_q and not grid.valid_qs()):
        raise DomainError("parameter grid is empty after rejecting invalid q values")
    reports: list[IdentityReport] = []
    if workers <= 1:
        for i in ids:
            reports.extend(_run_one(i, grid))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_run_one, ids, [grid] * len(ids)):
                reports.extend(chunk)
    reports.sort(key=_sort_key)
    return reports


def report_lines(reports: Iterable[IdentityReport]) -> Iterator[str]:
    """JSON-lines serialization, one object per report."""
    for r in reports:
        yield json.dumps(r.to_json(), sort_keys=False)
