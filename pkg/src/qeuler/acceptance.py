"""Acceptance checks shared by ``qeuler selftest`` and the test suite.

Each check returns a :class:`CriterionResult`; none of them raise on a
failed comparison.
"""

from __future__ import annotations

import contextlib
import io
import math
import os
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from qeuler.euler import classical_euler_number, q_euler
from qeuler.identities import DEFAULT_GRID, run_registry
from qeuler.padic import IntegrandSpec, closed_form, convergence_table
from qeuler.zeta import interpolation_check, mellin_check


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {self.detail}"


def registry_default_grid() -> CriterionResult:
    start = time.perf_counter()
    reports = run_registry(DEFAULT_GRID)
    elapsed = time.perf_counter() - start
    failed = sum(not r.passed for r in reports)
    ok = bool(reports) and failed == 0 and elapsed < 60
    return CriterionResult(
        1, "identity registry", ok,
        f"{len(reports)} checks, {failed} failed, {elapsed:.1f}s single-threaded (limit 60s)",
    )


def erratum_counterexamples() -> CriterionResult:
    parts = []
    ok = True
    for literal, corrected in (("E14-literal", "E14c"), ("E36-literal", "E36c")):
        lit = run_registry(DEFAULT_GRID, ids=[literal])
        cor = run_registry(DEFAULT_GRID, ids=[corrected])
        lit_fail = sum(not r.passed for r in lit)
        cor_fail = sum(not r.passed for r in cor)
        ok = ok and lit_fail >= 1 and bool(cor) and cor_fail == 0
        parts.append(
            f"{literal} fails {lit_fail}/{len(lit)}, {corrected} fails {cor_fail}/{len(cor)}"
        )
    return CriterionResult(2, "erratum counterexamples", ok, "; ".join(parts))


def padic_certification() -> CriterionResult:
    p, q, levels = 3, Fraction(4), range(1, 5)
    start = time.perf_counter()
    bad = []
    points = 0
    for m in range(4):
        for h in range(3):
            for k in (1, 2):
                spec = IntegrandSpec(m, h, k)
                rows = convergence_table(spec, levels, q, closed_form(spec, q), p)
                vals = [r.valuation for r in rows]
                points += 1
                monotone = all(b >= a for a, b in zip(vals, vals[1:]))
                finite = [v for v in vals if not math.isinf(v)]
                grows = not finite or vals[-1] - vals[0] >= 2
                if not (monotone and grows):
                    bad.append(((m, h, k), vals))
    mass = convergence_table(IntegrandSpec(0, 1, 1), levels, q, 1, p)
    mass_ok = all(r.value == 1 for r in mass)
    elapsed = time.perf_counter() - start
    ok = not bad and mass_ok and elapsed < 120
    detail = f"{points} grid points, {len(bad)} uncertified, unit mass exact: {mass_ok}, {elapsed:.1f}s"
    if bad:
        detail += f"; first failure {bad[0]}"
    return CriterionResult(3, "p-adic certification", ok, detail)


def _alternating_series(m: int, x: float, q: float, eps: float = 1e-15) -> float:
    # [2]_q sum_n (-1)^n q^n [n+x]_q^m; terms are bounded by q^n (1-q)^{-m}
    terms = []
    n = 0
    while True:
        bracket = (1 - q ** (n + x)) / (1 - q)
        terms.append((-1) ** n * q**n * bracket**m)
        n += 1
        if (1 + q) * q**n / (1 - q) ** m / (1 - q) < eps:
            break
    return (1 + q) * math.fsum(terms)


def oracle_equivalence() -> CriterionResult:
    q = Fraction(1, 2)
    worst = 0.0
    for m in range(5):
        for x, tau in ((0, Fraction(1)), (1, q), (2, q * q), (0.5, Fraction(math.sqrt(0.5)))):
            series = _alternating_series(m, x, float(q))
            closed = float(q_euler(m, 1, 1, q, tau))
            worst = max(worst, abs(series - closed))
    ok = worst < 1e-10
    return CriterionResult(
        4, "alternating-series oracle", ok,
        f"max |series - closed| = {worst:.3e} over m <= 4, q = 1/2 (tol 1e-10)",
    )


def classical_limit() -> CriterionResult:
    expected = [Fraction(1), Fraction(-1, 2), Fraction(0), Fraction(1, 4)]
    seq_ok = [classical_euler_number(n) for n in range(4)] == expected
    problems = []
    exact = []
    for m in range(9):
        em = classical_euler_number(m)
        diffs = [abs(q_euler(m, 1, 1, 1 + Fraction(1, 10**j)) - em) for j in range(2, 7)]
        if all(d == 0 for d in diffs):
            # exact agreement at every q is the limit itself
            exact.append(m)
        elif not all(b < a for a, b in zip(diffs, diffs[1:])):
            problems.append(m)
    ok = seq_ok and not problems
    detail = (
        f"strictly decreasing for m in 0..8 except exact agreement at m in {exact}; "
        f"non-monotone m: {problems}; classical E_0..E_3 match: {seq_ok}"
    )
    return CriterionResult(5, "classical limit", ok, detail)


def zeta_interpolation() -> CriterionResult:
    worst = 0.0
    for m in range(7):
        for q in (0.3, 0.5, 0.7):
            for h in (1, 2):
                for x in (0.5, 1.0):
                    worst = max(worst, interpolation_check(m, x, q, h).abs_diff)
    ok = worst < 1e-10
    return CriterionResult(
        6, "zeta interpolation", ok, f"max |series(-m) - closed| = {worst:.3e} (tol 1e-10)"
    )


def mellin() -> CriterionResult:
    a = mellin_check(2.0, 1.0, 0.5, 1)
    b = mellin_check(1.0, 0.5, 0.3, 2)
    ok = a.abs_diff < 1e-6 and b.abs_diff < 1e-6
    return CriterionResult(
        7, "Mellin representation", ok,
        f"diffs {a.abs_diff:.3e} (s=2, x=1, q=1/2, h=1), "
        f"{b.abs_diff:.3e} (s=1, x=1/2, q=0.3, h=2) (tol 1e-6)",
    )


def _cli_bytes(argv: list[str], path: str) -> tuple[int, bytes]:
    from qeuler.cli import main

    with contextlib.redirect_stderr(io.StringIO()):
        code = main(argv + ["--output", path])
    with open(path, "rb") as fh:
        return code, fh.read()


def determinism(workers: tuple[int, ...] = (1, 2, 8)) -> CriterionResult:
    commands = {
        "verify": ["verify"],
        "integrate": ["integrate", "--m", "2", "--h", "1", "--k", "2", "--p", "3",
                      "--q", "4", "--N", "1..4", "--stable"],
    }
    parts = []
    ok = True
    with tempfile.TemporaryDirectory() as tmp:
        for name, argv in commands.items():
            outputs = set()
            codes = set()
            for w in workers:
                code, data = _cli_bytes(argv + ["--workers", str(w)], os.path.join(tmp, f"{name}{w}"))
                outputs.add(data)
                codes.add(code)
            same = len(outputs) == 1 and codes == {0}
            ok = ok and same
            parts.append(f"{name} {'identical' if same else 'DIFFERS'} across workers {list(workers)}")
    return CriterionResult(8, "determinism", ok, "; ".join(parts))


CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    registry_default_grid,
    erratum_counterexamples,
    padic_certification,
    oracle_equivalence,
    classical_limit,
    zeta_interpolation,
    mellin,
    determinism,
)


def run_all(echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for check in CRITERIA:
        res = check()
        results.append(res)
        if echo is not None:
            echo(res.line())
    return results
