"""Command-line interface: ``qeuler <command> [options]``.

Exit codes are shared by every command: 0 success, 1 a check failed,
2 invalid parameters, 3 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from typing import Any, Callable, Iterator, Sequence

from qeuler.euler import q_euler
from qeuler.identities import DEFAULT_GRID, REGISTRY, Grid, report_lines, run_registry
from qeuler.padic import (
    BOSONIC,
    FERMIONIC,
    PATTERNS,
    IntegrandSpec,
    PadicContext,
    admissible_q,
    budget_from_env,
    closed_form,
    convergence_csv,
    convergence_table,
)
from qeuler.qcore import BudgetExceeded, DomainError, check_q, format_rational, parse_rational
from qeuler.zeta import (
    SeriesConfig,
    TruncationError,
    interpolation_check,
    mellin_check,
    zeta_csv,
    zeta_series,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

INTERPOLATION_TOL = 1e-10
MELLIN_TOL = 1e-6


class ConfigError(Exception):
    """An invalid parameter; ``key`` names the offending option."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def _param(key: str, parse: Callable[[str], Any], raw: Any) -> Any:
    try:
        return parse(raw)
    except (ValueError, TypeError, ArithmeticError) as exc:
        raise ConfigError(key, str(exc)) from None


def _base(raw: str):
    return check_q(parse_rational(raw))


def _level_range(raw: str) -> list[int]:
    lo, sep, hi = raw.partition("..")
    levels = list(range(int(lo), int(hi) + 1)) if sep else [int(raw)]
    if not levels or min(levels) < 1:
        raise ValueError(f"need a nonempty range of levels >= 1, got {raw!r}")
    return levels


def _nonneg(raw: Any) -> int:
    v = int(raw)
    if v < 0:
        raise ValueError(f"must be >= 0, got {v}")
    return v


def _positive(raw: Any) -> int:
    v = int(raw)
    if v < 1:
        raise ValueError(f"must be >= 1, got {v}")
    return v


@contextmanager
def _sink(path: str | None) -> Iterator[io.TextIOBase]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        yield fh


def _float_text(z: complex) -> str:
    return repr(z.real) if z.imag == 0 else repr(z)


# -- numbers / poly -----------------------------------------------------------


def _table(args, tau) -> list[dict]:
    q = args.q
    return [
        {"m": m, "h": args.h, "k": args.k, "q": format_rational(q),
         "value": format_rational(q_euler(m, args.h, args.k, q, tau))}
        for m in range(args.m_max + 1)
    ]


def _emit_table(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["m", "value"])
        for row in rows:
            writer.writerow([row["m"], row["value"]])
    else:
        for row in rows:
            out.write(f"{row['m']:>3}  {row['value']}\n")


def _check_table_args(args) -> None:
    args.q = _param("q", _base, args.q)
    _param("m-max", _nonneg, args.m_max)
    _param("k", _nonneg, args.k)


def cmd_numbers(args) -> int:
    _check_table_args(args)
    rows = _table(args, 1)
    with _sink(args.output) as out:
        _emit_table(rows, args.format, out)
    return EXIT_OK


def cmd_poly(args) -> int:
    _check_table_args(args)
    if args.tau is not None and args.x is not None:
        raise ConfigError("tau", "give either --tau or --x, not both")
    if args.tau is not None:
        tau = _param("tau", parse_rational, args.tau)
        if tau == 0:
            raise ConfigError("tau", "must be nonzero")
    else:
        tau = args.q ** _param("x", int, args.x or 0)
    rows = _table(args, tau)
    for row in rows:
        row["tau"] = format_rational(tau)
    with _sink(args.output) as out:
        _emit_table(rows, args.format, out)
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def cmd_verify(args) -> int:
    ids = args.id
    if ids:
        unknown = [i for i in ids if i not in REGISTRY]
        if unknown:
            raise ConfigError("id", f"unknown identity ids {unknown}")
    grid = DEFAULT_GRID
    if args.m_max is not None or args.q:
        m_max = _param("m-max", _nonneg, args.m_max) if args.m_max is not None else max(grid.ms)
        qs = tuple(_param("q", parse_rational, s) for s in args.q) if args.q else grid.qs
        grid = Grid(ms=tuple(range(m_max + 1)), qs=qs)
    workers = _param("workers", _positive, args.workers)
    try:
        reports = run_registry(grid, ids=ids or None, workers=workers)
    except DomainError as exc:
        raise ConfigError("q", str(exc)) from None
    with _sink(args.output) as out:
        for line in report_lines(reports):
            out.write(line + "\n")
    failed = [r for r in reports if not r.passed]
    print(f"verify: {len(reports)} checks, {len(failed)} failed", file=sys.stderr)
    for ident_id in sorted({r.id for r in failed}):
        count = sum(r.id == ident_id for r in failed)
        note = REGISTRY[ident_id].erratum
        suffix = f" (erratum: {note})" if note else ""
        print(f"  {ident_id}: {count} failures{suffix}", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


# -- integrate ----------------------------------------------------------------


def cmd_integrate(args) -> int:
    p = _param("p", int, args.p)
    q = _param("q", _base, args.q)
    levels = _param("N", _level_range, args.N)
    try:
        spec = IntegrandSpec(
            m=_param("m", _nonneg, args.m),
            h=_param("h", int, args.h),
            k=_param("k", _positive, args.k),
            shift=_param("shift", _nonneg, args.shift),
            mode=args.mode,
            weight_pattern=args.pattern,
        )
    except DomainError as exc:
        text = str(exc)
        key = "pattern" if ("pattern" in text or "k1_weight" in text) else "mode" if "measure" in text else "m"
        raise ConfigError(key, text) from None
    try:
        PadicContext(p, 1, _param("d", int, args.d))
    except DomainError as exc:
        key = "d" if "d must" in str(exc) else "p"
        raise ConfigError(key, str(exc)) from None
    if not admissible_q(q, p):
        raise ConfigError("q", f"q = {format_rational(q)} needs v_{p}(q - 1) >= 1")
    if args.mode == FERMIONIC and args.d % 2 == 0:
        raise ConfigError("d", "the fermionic measure needs odd d")
    if args.target is not None:
        target = _param("target", parse_rational, args.target)
    elif args.mode == BOSONIC:
        raise ConfigError("target", "the bosonic measure needs an explicit --target")
    else:
        target = closed_form(spec, q)
    budget = (
        _param("budget", _positive, args.budget)
        if args.budget is not None
        else _param("QEULER_BUDGET", lambda _: budget_from_env(), None)
    )
    workers = _param("workers", _positive, args.workers)
    rows = convergence_table(spec, levels, q, target, p, args.d, budget=budget, workers=workers)
    with _sink(args.output) as out:
        out.write(convergence_csv(rows, stable=args.stable))
    return EXIT_OK


# -- zeta ---------------------------------------------------------------------


def cmd_zeta(args) -> int:
    s = _param("s", complex, args.s)
    q = _param("q", complex, args.q)
    x = _param("x", float, args.x)
    h = _param("h", int, args.h)
    try:
        cfg = SeriesConfig(eps=_param("eps", float, args.eps), max_terms=_param("max-terms", int, args.max_terms))
    except DomainError as exc:
        raise ConfigError("eps", str(exc)) from None
    if not 0 < abs(q) < 1:
        raise ConfigError("q", f"need 0 < |q| < 1, got {args.q}")
    if not 0 < x <= 1:
        raise ConfigError("x", f"need 0 < x <= 1, got {args.x}")
    if h < 1:
        raise ConfigError("h", f"need h >= 1, got {h}")
    if args.check_interpolation:
        if s.imag != 0 or s.real > 0 or not s.real.is_integer():
            raise ConfigError("s", "--check-interpolation needs s = -m with m >= 0")
        if q.imag != 0 or not 0 < q.real < 1:
            raise ConfigError("q", "--check-interpolation needs real q in (0, 1)")
    if args.mellin and (s.imag != 0 or s.real <= 0 or q.imag != 0 or q.real <= 0):
        raise ConfigError("s", "--mellin needs real s > 0 and real q in (0, 1)")
    try:
        res = zeta_series(s, x, q, h, cfg)
    except DomainError as exc:
        raise ConfigError("s", str(exc)) from None
    status = EXIT_OK
    lines: list[str] = []
    extra: dict[str, Any] = {}
    if args.check_interpolation:
        chk = interpolation_check(int(-s.real), x, q.real, h, cfg)
        ok = chk.abs_diff < INTERPOLATION_TOL
        status = max(status, EXIT_OK if ok else EXIT_FAILED)
        extra["interpolation"] = {
            "series": chk.series_value, "closed": chk.closed_value,
            "abs_diff": chk.abs_diff, "pass": ok,
        }
        lines.append(f"series={chk.series_value!r} closed={chk.closed_value!r} diff={chk.abs_diff!r}")
    if args.mellin:
        chk = mellin_check(s.real, x, q.real, h)
        ok = chk.abs_diff < MELLIN_TOL
        status = max(status, EXIT_OK if ok else EXIT_FAILED)
        extra["mellin"] = {
            "quadrature": chk.quadrature_value, "series": chk.series_value,
            "abs_diff": chk.abs_diff, "cutoff": chk.cutoff, "pass": ok,
        }
        lines.append(
            f"quadrature={chk.quadrature_value!r} series={chk.series_value!r} diff={chk.abs_diff!r}"
        )
    with _sink(args.output) as out:
        if args.format == "csv":
            out.write(zeta_csv([{
                "s_re": s.real, "s_im": s.imag, "x": x, "q": q, "h": h,
                "value_re": res.value.real, "value_im": res.value.imag,
                "n_terms": res.n_terms, "tail_bound": res.tail_bound,
            }]))
        elif args.format == "json":
            record = {
                "s": [s.real, s.imag], "x": x, "q": [q.real, q.imag], "h": h,
                "value": [res.value.real, res.value.imag],
                "n_terms": res.n_terms, "tail_bound": res.tail_bound,
            }
            record.update(extra)
            out.write(json.dumps(record) + "\n")
        else:
            out.write(_float_text(res.value) + "\n")
            out.write(f"n_terms={res.n_terms} tail_bound={res.tail_bound!r}\n")
            for line in lines:
                out.write(line + "\n")
    return status


# -- selftest -----------------------------------------------------------------


def cmd_selftest(args) -> int:
    from qeuler.acceptance import run_all

    results = run_all(echo=lambda line: print(line, flush=True))
    passed = sum(r.passed for r in results)
    print(f"selftest: {passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_FAILED


# -- parser -------------------------------------------------------------------


def _table_flags(sp) -> None:
    sp.add_argument("--m-max", type=int, default=5)
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--q", required=True, help='rational base, e.g. "1/2"')
    sp.add_argument("--format", choices=("json", "csv", "human"), default="human")
    sp.add_argument("--output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeuler", description="Exact higher-order q-Euler numbers, identities and zeta values."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("numbers", help="table of E^{(h,k)}_{m,q} for m = 0..m-max")
    _table_flags(sp)
    sp.set_defaults(func=cmd_numbers)

    sp = sub.add_parser("poly", help="table of E^{(h,k)}_{m,q}(x)")
    _table_flags(sp)
    sp.add_argument("--tau", help="value of q^x as a rational")
    sp.add_argument("--x", help="integer argument x (tau = q^x)")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("verify", help="check the identity registry; JSON lines")
    sp.add_argument("--id", action="append", help="restrict to this identity (repeatable)")
    sp.add_argument("--m-max", help="override the degree range 0..m-max")
    sp.add_argument("--q", action="append", help="override the base values (repeatable)")
    sp.add_argument("--workers", default=1)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("integrate", help="p-adic Riemann-sum convergence; CSV")
    sp.add_argument("--m", default=0)
    sp.add_argument("--h", default=1)
    sp.add_argument("--k", default=1)
    sp.add_argument("--shift", default=0)
    sp.add_argument("--p", default=3)
    sp.add_argument("--q", required=True)
    sp.add_argument("--N", default="1..4", help='level or range "a..b"')
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--mode", choices=(FERMIONIC, BOSONIC), default=FERMIONIC)
    sp.add_argument("--pattern", choices=PATTERNS, default="h_minus_j")
    sp.add_argument("--target", help="rational limit; defaults to the closed form")
    sp.add_argument("--stable", action="store_true", help="omit the timing column")
    sp.add_argument("--workers", default=1)
    sp.add_argument("--budget", help="maximum number of summed terms")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_integrate)

    sp = sub.add_parser("zeta", help="evaluate the q-Euler zeta series")
    sp.add_argument("--s", required=True, help='complex, e.g. "2" or "0.5+3j"')
    sp.add_argument("--x", default="1")
    sp.add_argument("--q", required=True)
    sp.add_argument("--h", default=1)
    sp.add_argument("--eps", default=1e-16)
    sp.add_argument("--max-terms", default=100_000)
    sp.add_argument("--check-interpolation", action="store_true")
    sp.add_argument("--mellin", action="store_true")
    sp.add_argument("--format", choices=("json", "csv", "human"), default="human")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("selftest", help="run the acceptance checks")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: invalid parameter {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BudgetExceeded, TruncationError) as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"error: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
