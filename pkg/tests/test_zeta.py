import cmath
import math
from fractions import Fraction

import pytest
from scipy import integrate

from qeuler.euler import q_euler
from qeuler.qcore import DomainError
from qeuler.zeta import (
    BranchError,
    SeriesConfig,
    TruncationError,
    _bracket_power,
    gen_fn,
    interpolation_check,
    mellin_check,
    zeta_csv,
    zeta_eq,
    zeta_series,
)


@pytest.mark.parametrize("q, h", [(0.5, 1), (0.3, 2), (0.8, 3), (-0.4, 1)])
def test_zeta_at_zero_is_independent_of_x(q, h):
    ref = zeta_eq(0, 1.0, q, h)
    assert abs(ref - (1 + q) / (1 + q**h)) < 1e-12
    worst = max(abs(zeta_eq(0, x / 10, q, h) - ref) for x in range(1, 11))
    assert worst < 1e-12


def test_zeta_at_zero_example():
    assert zeta_eq(0, 1, 0.5, 1) == 1.0


@pytest.mark.parametrize("s", [-3.0, -0.5, 0.0, 1.0, 2.5])
@pytest.mark.parametrize("q", [0.3, 0.7])
def test_reported_tail_bound_holds(s, q):
    coarse = zeta_series(s, 0.5, q, 1, SeriesConfig(eps=1e-6))
    fine = zeta_series(s, 0.5, q, 1, SeriesConfig(eps=1e-15))
    assert fine.n_terms >= coarse.n_terms + 10
    assert abs(coarse.value - fine.value) <= coarse.tail_bound + fine.tail_bound + 1e-15


def test_large_real_part_is_dominated_by_first_term():
    q = 0.5
    res = zeta_series(40, 1.0, q, 1)
    second = q * ((1 - q**2) / (1 - q)) ** -40
    assert abs(res.value - (1 + q)) <= (1 + q) * 2 * second


def test_complex_arguments_match_direct_sum():
    s, x, q, h = 0.7 + 2.0j, 0.25, 0.4 + 0.3j, 2
    res = zeta_series(s, x, q, h)
    direct = (1 + q) * sum(
        (-1) ** n * q ** (h * n) * cmath.exp(-s * cmath.log((1 - cmath.exp((n + x) * cmath.log(q))) / (1 - q)))
        for n in range(400)
    )
    assert abs(res.value - direct) < 1e-12


@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("q", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("h", [1, 2])
@pytest.mark.parametrize("x", [0.5, 1.0])
def test_interpolation_at_negative_integers(m, q, h, x):
    chk = interpolation_check(m, x, q, h)
    assert chk.abs_diff < 1e-10


def test_interpolation_examples():
    chk = interpolation_check(0, 1, 0.5, 3)
    assert abs(chk.series_value - 1.5 / 1.125) < 1e-15
    assert interpolation_check(1, 1, 0.5, 1).abs_diff < 1e-12


def literal_bracket_exponent(m, x, q, h, terms=400):
    # summand [n+x]^n in place of [n+x]^m
    b = lambda a: (1 - q**a) / (1 - q)
    return (1 + q) * math.fsum((-1) ** n * q ** (h * n) * b(n + x) ** n for n in range(terms))


def test_literal_bracket_exponent_fails():
    q, h, x, m = 0.3, 2, 1.0, 2
    closed = float(q_euler(m, h, 1, Fraction(q), Fraction(q)))
    assert abs(zeta_eq(-m, x, q, h).real - closed) < 1e-12
    assert abs(literal_bracket_exponent(m, x, q, h) - closed) > 1e-2


@pytest.mark.parametrize("q, h, x", [(0.5, 1, 1.0), (0.3, 2, 0.5), (-0.6, 1, 1.0)])
def test_generating_function_at_zero(q, h, x):
    assert abs(gen_fn(0, x, q, h) - (1 + q) / (1 + q**h)) < 1e-13


@pytest.mark.parametrize("q, h", [(0.5, 1), (0.3, 2)])
def test_taylor_coefficients_by_cauchy_integral(q, h):
    # m-th coefficient = (1/2 pi i) contour integral of F(t) / t^{m+1} on |t| = r
    r, n = 1.0, 64
    samples = [gen_fn(r * cmath.exp(2j * math.pi * j / n), 1.0, q, h) for j in range(n)]
    qe = Fraction(q)
    for m in range(6):
        coeff = sum(f * cmath.exp(-2j * math.pi * j * m / n) for j, f in enumerate(samples)) / n / r**m
        expected = float(q_euler(m, h, 1, qe, qe)) / math.factorial(m)
        assert abs(coeff - expected) < 1e-12


@pytest.mark.parametrize("t", [-5.0, -20.0, -60.0])
def test_decay_bound(t):
    q, h, x = 0.5, 1, 0.5
    bx = (1 - q**x) / (1 - q)
    assert abs(gen_fn(t, x, q, h)) <= (1 + q) * math.exp(bx * t) / (1 - q**h)


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0, 3.5])
@pytest.mark.parametrize("n", [0, 1, 5])
def test_gamma_integral_per_term(s, n):
    q, x = 0.5, 1.0
    b = (1 - q ** (n + x)) / (1 - q)
    value, _ = integrate.quad(lambda t: t ** (s - 1) * math.exp(-b * t), 0, math.inf)
    assert abs(value - math.gamma(s) / b**s) < 1e-8


def test_mellin_examples():
    assert mellin_check(2, 1, 0.5, 1).abs_diff < 1e-6
    assert mellin_check(1, 0.5, 0.3, 2).abs_diff < 1e-6
    assert mellin_check(0.5, 1, 0.6, 1).abs_diff < 1e-6


@pytest.mark.parametrize(
    "kwargs",
    [dict(q=1.5), dict(q=0.0), dict(q=-1.0), dict(x=0.0), dict(x=1.5), dict(h=0), dict(h=1.5)],
)
def test_domain_errors(kwargs):
    args = dict(s=1.0, x=1.0, q=0.5, h=1)
    args.update(kwargs)
    with pytest.raises(DomainError):
        zeta_series(**args)


def test_mellin_needs_positive_s():
    with pytest.raises(DomainError):
        mellin_check(-1.0, 1.0, 0.5, 1)


def test_branch_cut_rejected():
    with pytest.raises(BranchError):
        _bracket_power(complex(-2.0, 0.0), 0.5)
    with pytest.raises(BranchError):
        _bracket_power(complex(0.0, 0.0), 1.0)


def test_truncation_error():
    with pytest.raises(TruncationError) as info:
        zeta_series(1.0, 1.0, 0.99, 1, SeriesConfig(eps=1e-15, max_terms=10))
    assert info.value.bound > 1e-15


def test_csv_columns():
    res = zeta_series(2, 1.0, 0.5, 1)
    text = zeta_csv([{
        "s_re": 2.0, "s_im": 0.0, "x": 1.0, "q": 0.5, "h": 1,
        "value_re": res.value.real, "value_im": 0.0,
        "n_terms": res.n_terms, "tail_bound": res.tail_bound,
    }])
    header, row = text.splitlines()
    assert header == "s_re,s_im,x,q,h,value_re,value_im,n_terms,tail_bound"
    assert float(row.split(",")[5]) == res.value.real
