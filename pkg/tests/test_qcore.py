from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuler.qcore import (
    DomainError,
    EvalPoint,
    PoleError,
    as_rational,
    binomial,
    check_q,
    denominator_support,
    format_rational,
    parse_rational,
    q_bracket_int,
    q_bracket_tau,
    q_shifted_factorial,
    reject_poles,
)

rationals = st.fractions().filter(lambda r: r not in (0, 1, -1))


def test_bracket_examples(q):
    assert q_bracket_int(0, q) == 0
    assert q_bracket_int(1, q) == 1
    assert q_bracket_int(3, 2) == 7


def test_bracket_tau_examples(q):
    assert q_bracket_tau(EvalPoint(q, 1)) == 0
    assert q_bracket_tau(EvalPoint(q, q)) == 1
    assert q_bracket_tau(EvalPoint(Fraction(1, 2), Fraction(1, 8))) == Fraction(7, 4)


def test_shifted_factorial_examples():
    assert q_shifted_factorial(Fraction(5), Fraction(1, 3), 0) == 1
    assert q_shifted_factorial(Fraction(-8), Fraction(1, 2), 2) == 45


def test_shifted_factorial_matches_product(q):
    h, l, k = 1, 2, 3
    expected = 1
    for i in range(k):
        expected *= 1 + q ** (h + l - i)
    assert q_shifted_factorial(-(q ** (h + l)), 1 / q, k) == expected


def test_binomial():
    assert binomial(5, 2) == 10
    assert binomial(9, 0) == 1
    assert binomial(7, 8) == 0
    assert binomial(3, -1) == 0


def test_denominator_support():
    assert denominator_support(0, 1, 1) == {1}
    assert denominator_support(1, 1, 1) == {1, 2}
    assert denominator_support(0, 0, 2) == {0, -1}


@pytest.mark.parametrize("bad", [0, 1, -1, "1/1", "-2/2"])
def test_check_q_rejects(bad):
    with pytest.raises(DomainError):
        check_q(bad)


def test_reject_poles_names_exponent():
    with pytest.raises(PoleError) as info:
        reject_poles(Fraction(-1), {2, 3})
    assert info.value.exponent == 3
    reject_poles(Fraction(-1), {0, 2})


def test_evalpoint():
    pt = EvalPoint.at(Fraction(2, 3), 3)
    assert pt.tau == Fraction(8, 27)
    assert pt.shifted(-3).tau == 1
    with pytest.raises(DomainError):
        EvalPoint(Fraction(1, 2), 0)


def test_serialization_round_trip():
    assert format_rational(Fraction(-2, 5)) == "-2/5"
    assert format_rational(3) == "3/1"
    assert parse_rational("4/-6") == Fraction(-2, 3)
    assert parse_rational(" 7 ") == 7
    with pytest.raises(DomainError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_floats_are_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


@given(st.fractions(), st.fractions().filter(bool))
def test_exact_arithmetic(a, b):
    assert (a + b) - b == a
    assert (a * b) / b == a


@given(rationals, st.integers(-20, 20))
def test_bracket_geometric(q, n):
    assert q_bracket_int(n, q) * (1 - q) + q**n == 1


@given(rationals, st.fractions(), st.integers(0, 8))
def test_shifted_factorial_step(base, a, n):
    assert q_shifted_factorial(a, base, n + 1) == q_shifted_factorial(a, base, n) * (
        1 - a * base**n
    )


@pytest.mark.parametrize("n", range(-16, 17))
def test_bracket_tau_matches_int(q, n):
    assert q_bracket_tau(EvalPoint.at(q, n)) == q_bracket_int(n, q)


@given(st.fractions())
def test_format_parse_inverse(r):
    assert parse_rational(format_rational(r)) == r
