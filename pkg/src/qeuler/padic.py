"""Finite-level q-Volkenborn sums and their p-adic convergence.

A level-N Riemann sum replaces each integral over Z_p (or X_d) by a weighted
sum over the residues ``0 <= x < d p^N``.  All sums are exact rationals; their
distance to a closed form is measured by the p-adic valuation of the exact
difference, which grows with N when the closed form is the integral.
"""

from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from qeuler.euler import fermionic_moment, q_euler
from qeuler.qcore import BudgetExceeded, DomainError, EvalPoint, as_rational, check_q

__all__ = [
    "DEFAULT_BUDGET",
    "FERMIONIC",
    "BOSONIC",
    "ConvergenceRow",
    "IntegrandSpec",
    "PadicContext",
    "PadicResidue",
    "admissible_q",
    "budget_from_env",
    "certified",
    "closed_form",
    "convergence_csv",
    "convergence_table",
    "is_prime",
    "measure_weight",
    "riemann_sum",
    "to_residue",
    "valuation",
]

FERMIONIC = "fermionic"
BOSONIC = "bosonic"
PATTERNS = ("h_minus_j", "pure_power", "k1_weight")

DEFAULT_BUDGET = 10**7


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("QEULER_BUDGET")
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError("QEULER_BUDGET must be a positive integer")
    return value


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(r: Any, p: int) -> float:
    """``v_p(r)``; ``math.inf`` for zero."""
    r = as_rational(r)
    if r == 0:
        return math.inf
    return _vp_int(abs(r.numerator), p) - _vp_int(r.denominator, p)


def admissible_q(q: Any, p: int) -> bool:
    """``|q - 1|_p < p^{-1/(p-1)}``; for odd p this is ``v_p(q - 1) >= 1``."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    q = as_rational(q)
    if q == 1:
        return False
    return valuation(q - 1, p) >= 1


@dataclass(frozen=True)
class PadicContext:
    """Prime ``p``, level ``N``, support ``X_d`` and display precision ``M``."""

    p: int
    N: int
    d: int = 1
    M: int = 8

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise DomainError(f"p must be an odd prime, got {self.p}")
        if self.N < 1:
            raise DomainError("level N must be >= 1")
        if self.M < 1:
            raise DomainError("precision M must be >= 1")
        if self.d < 1 or math.gcd(self.d, self.p) != 1:
            raise DomainError(f"d must be a positive integer prime to p, got {self.d}")

    @property
    def period(self) -> int:
        return self.d * self.p**self.N


@dataclass(frozen=True)
class PadicResidue:
    p: int
    precision: int
    residue: int

    def __str__(self):
        return f"{self.residue} mod {self.p}^{self.precision}"


def to_residue(r: Any, p: int, precision: int) -> PadicResidue:
    """Image of a p-integral rational in ``Z / p^precision``."""
    r = as_rational(r)
    if valuation(r, p) < 0:
        raise DomainError("rational is not p-integral")
    mod = p**precision
    residue = r.numerator * pow(r.denominator, -1, mod) % mod
    return PadicResidue(p, precision, residue)


@dataclass(frozen=True)
class IntegrandSpec:
    """The integrand ``[shift + sum x_j]_q^m q^{sum a_j x_j}`` of a k-fold integral.

    ``weight_pattern`` picks the exponents ``a_j``: ``h_minus_j`` uses
    ``h - j``; ``k1_weight`` is the single-variable ``h - 1``; ``pure_power``
    uses ``m - j`` and drops the bracket power (the integrand is then just
    ``q^{sum (m - j) x_j}``).
    """

    m: int
    h: int
    k: int
    shift: int = 0
    mode: str = FERMIONIC
    weight_pattern: str = "h_minus_j"

    def __post_init__(self):
        if self.m < 0 or self.k < 1 or self.shift < 0:
            raise DomainError("need m >= 0, k >= 1, shift >= 0")
        if self.mode not in (FERMIONIC, BOSONIC):
            raise DomainError(f"unknown measure {self.mode!r}")
        if self.weight_pattern not in PATTERNS:
            raise DomainError(f"unknown weight pattern {self.weight_pattern!r}")
        if self.weight_pattern == "k1_weight" and self.k != 1:
            raise DomainError("k1_weight needs k = 1")

    def exponents(self) -> list[int]:
        if self.weight_pattern == "pure_power":
            return [self.m - j for j in range(1, self.k + 1)]
        return [self.h - j for j in range(1, self.k + 1)]

    @property
    def bracket_power(self) -> int:
        return 0 if self.weight_pattern == "pure_power" else self.m


def closed_form(spec: IntegrandSpec, q: Any) -> Any:
    """The fermionic integral the level sums converge to."""
    if spec.mode != FERMIONIC:
        raise DomainError("closed forms are available for the fermionic measure only")
    q = check_q(q)
    if spec.weight_pattern == "pure_power":
        return fermionic_moment(0, spec.exponents(), EvalPoint(q, 1))
    return q_euler(spec.m, spec.h, spec.k, q, q**spec.shift)


def measure_weight(x: int, ctx: PadicContext, q: Any, mode: str = FERMIONIC) -> Any:
    """Mass of ``x + d p^N Z_p`` under the fermionic or bosonic q-measure."""
    q = check_q(q)
    n = ctx.period
    if not 0 <= x < n:
        raise DomainError(f"residue {x} outside [0, {n})")
    if mode == FERMIONIC:
        denom = 1 + q**n
        if denom == 0:
            raise DomainError("1 + q^{dp^N} vanishes")
        return (-1) ** x * q**x * (1 + q) / denom
    if mode == BOSONIC:
        denom = (1 - q**n) / (1 - q)
        if denom == 0:
            raise DomainError("[dp^N]_q vanishes")
        return q**x / denom
    raise DomainError(f"unknown measure {mode!r}")


def term_count(spec: IntegrandSpec, ctx: PadicContext) -> int:
    return ctx.period**spec.k


def _check_sum(spec: IntegrandSpec, ctx: PadicContext, q: Any, budget: int | None) -> Fraction:
    q = check_q(q)
    if not admissible_q(q, ctx.p):
        raise DomainError(f"q = {q} is not admissible for p = {ctx.p}")
    if spec.mode == FERMIONIC and ctx.d % 2 == 0:
        raise DomainError("the fermionic measure on X_d needs odd d")
    limit = budget_from_env() if budget is None else budget
    terms = term_count(spec, ctx)
    if terms > limit:
        raise BudgetExceeded(f"{terms} terms exceed the budget of {limit}")
    return q


def _tables(spec: IntegrandSpec, ctx: PadicContext, q: Fraction):
    n = ctx.period
    mass = [measure_weight(x, ctx, q, spec.mode) for x in range(n)]
    coords = []
    for a in spec.exponents():
        step = q**a
        row, acc = [], Fraction(1)
        for x in range(n):
            row.append(mass[x] * acc)
            acc *= step
        coords.append(row)
    # the bracket couples the coordinates; it depends only on s = sum x_j
    tau = q**spec.shift
    power = spec.bracket_power
    brackets, qs = [], Fraction(1)
    for _ in range(spec.k * (n - 1) + 1):
        brackets.append(((1 - tau * qs) / (1 - q)) ** power)
        qs *= q
    return coords, brackets


def _partial(spec, ctx, q, lo, hi) -> Fraction:
    coords, brackets = _tables(spec, ctx, q)
    n = ctx.period
    k = spec.k

    memo: dict[tuple[int, int], Fraction] = {}

    def inner(depth: int, s: int) -> Fraction:
        # sum over x_depth..x_k of prod weights * bracket[s + ...]; depends
        # only on (depth, s)
        key = (depth, s)
        if key in memo:
            return memo[key]
        row = coords[depth]
        if depth == k - 1:
            value = sum((row[x] * brackets[s + x] for x in range(n)), Fraction(0))
        else:
            value = sum((row[x] * inner(depth + 1, s + x) for x in range(n)), Fraction(0))
        memo[key] = value
        return value

    first = coords[0]
    total = Fraction(0)
    for x in range(lo, hi):
        total += first[x] * (brackets[x] if k == 1 else inner(1, x))
    return total


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    bounds = [n * i // parts for i in range(parts + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


def riemann_sum(
    spec: IntegrandSpec,
    ctx: PadicContext,
    q: Any,
    budget: int | None = None,
    workers: int = 1,
) -> Fraction:
    """Exact level-N k-fold Riemann sum of ``spec`` over ``X_d``.

    The outer coordinate is split into contiguous blocks; partial sums are
    combined by exact addition in block order, so the value is the same for
    any ``workers``.
    """
    q = _check_sum(spec, ctx, q, budget)
    blocks = _chunks(ctx.period, workers)
    if workers <= 1 or len(blocks) == 1:
        return _partial(spec, ctx, q, 0, ctx.period)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(
            pool.map(
                _partial,
                [spec] * len(blocks),
                [ctx] * len(blocks),
                [q] * len(blocks),
                [lo for lo, _ in blocks],
                [hi for _, hi in blocks],
            )
        )
    total = Fraction(0)
    for part in parts:
        total += part
    return total


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    terms: int
    valuation: float
    elapsed_ms: float
    value: Fraction


def convergence_table(
    spec: IntegrandSpec,
    levels: Iterable[int],
    q: Any,
    target: Any,
    p: int,
    d: int = 1,
    budget: int | None = None,
    workers: int = 1,
) -> list[ConvergenceRow]:
    """``v_p(S_N - target)`` for each level N.

    The budget is checked for every level before any sum is computed.
    """
    levels = list(levels)
    target = as_rational(target)
    ctxs = [PadicContext(p, N, d) for N in levels]
    for ctx in ctxs:
        _check_sum(spec, ctx, q, budget)
    rows = []
    for ctx in ctxs:
        start = time.perf_counter()
        value = riemann_sum(spec, ctx, q, budget=budget, workers=workers)
        elapsed = (time.perf_counter() - start) * 1000.0
        rows.append(
            ConvergenceRow(ctx.N, term_count(spec, ctx), valuation(value - target, p), elapsed, value)
        )
    return rows


def certified(vals: Sequence[float]) -> bool:
    """Nondecreasing, and up by at least one across every two-level window.

    A valuation of ``inf`` (exact agreement) counts as larger than any finite
    value.
    """
    vals = list(vals)
    for a, b in zip(vals, vals[1:]):
        if b < a:
            return False
    for a, c in zip(vals, vals[2:]):
        if math.isinf(a) and math.isinf(c):
            continue
        if c - a < 1:
            return False
    return True


def _fmt_valuation(v: float) -> str:
    return "inf" if math.isinf(v) else str(int(v))


def convergence_csv(rows: Sequence[ConvergenceRow], stable: bool = False) -> str:
    """CSV with columns N, terms, valuation, elapsed_ms.

    ``stable`` drops the timing column so that output is reproducible.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["N", "terms", "valuation"] + ([] if stable else ["elapsed_ms"])
    writer.writerow(header)
    for r in rows:
        line = [r.N, r.terms, _fmt_valuation(r.valuation)]
        if not stable:
            line.append(f"{r.elapsed_ms:.3f}")
        writer.writerow(line)
    return buf.getvalue()
