import json
from fractions import Fraction

import pytest

from qeuler.identities import (
    DEFAULT_GRID,
    REGISTRY,
    Grid,
    ParameterRejected,
    enumerate_params,
    report_lines,
    run_registry,
    verify,
)
from qeuler.qcore import DomainError

SMALL = Grid(ms=tuple(range(4)), hs=(-1, 0, 2), ks=(1, 2), ls=(1, 3), qs=(Fraction(3, 5), Fraction(2)))
CORRECTED = [i for i, ident in REGISTRY.items() if not ident.literal]
LITERAL = [i for i, ident in REGISTRY.items() if ident.literal]


@pytest.mark.parametrize("ident_id", CORRECTED)
def test_identity_holds_on_small_grid(ident_id):
    reports = run_registry(SMALL, ids=[ident_id])
    assert reports
    assert all(r.passed for r in reports), next(r for r in reports if not r.passed).to_json()


@pytest.mark.parametrize("ident_id", LITERAL)
def test_literal_forms_have_counterexamples(ident_id):
    reports = run_registry(SMALL, ids=[ident_id])
    assert any(not r.passed for r in reports)
    assert REGISTRY[ident_id].erratum


def test_literal_delta_fails_exactly_at_degree_zero():
    reports = run_registry(DEFAULT_GRID, ids=["E14-literal"])
    failing = {r.params["m"] for r in reports if not r.passed}
    assert failing == {0}


def test_small_examples():
    q = Fraction(1, 2)
    assert verify("T3a", {"m": 3, "k": 2, "l": 1, "q": q, "tau": q}).passed
    r = verify("E13", {"m": 0, "h": 2, "q": q, "tau": 1})
    assert r.lhs == r.rhs == 1 + q
    for h in (-1, 0, 3):
        r = verify("E14c", {"m": 0, "h": h, "q": Fraction(5, 3)})
        assert r.lhs == r.rhs == Fraction(8, 3)


def test_complementary_exponent_for_higher_orders():
    for k in range(1, 5):
        for m in range(4):
            assert verify("E22", {"m": m, "k": k, "q": Fraction(2, 7), "tau": Fraction(4, 49)}).passed


def test_filter_semantics():
    reports = run_registry(DEFAULT_GRID, ids=["E33"])
    assert reports and {r.id for r in reports} == {"E33"}


def test_unknown_id():
    with pytest.raises(KeyError):
        run_registry(DEFAULT_GRID, ids=["NOPE"])


def test_empty_grid_is_an_error():
    with pytest.raises(DomainError):
        run_registry(Grid(qs=(Fraction(1), Fraction(-1), Fraction(0))), ids=["E33"])


def test_hypotheses_are_enforced():
    with pytest.raises(ParameterRejected):
        verify("MIX", {"m": 1, "h": 0, "k": 1, "i": 2, "q": Fraction(2)})
    with pytest.raises(ParameterRejected):
        verify("T3a", {"m": 1, "k": 1, "l": 2, "q": Fraction(2), "tau": 1})
    with pytest.raises(ParameterRejected):
        verify("E33", {"m": 1, "q": Fraction(2)})


def test_enumeration_is_lexicographic():
    params = list(enumerate_params(REGISTRY["E33"], SMALL))
    keys = [(p["m"], p["h"], p["q"]) for p in params]
    assert keys == sorted(keys)
    assert all(p["h"] >= 0 for p in params)


def test_json_lines_schema():
    reports = run_registry(SMALL, ids=["E14-literal"])
    lines = list(report_lines(reports))
    assert len(lines) == len(reports)
    obj = json.loads(lines[0])
    assert list(obj) == ["id", "params", "lhs", "rhs", "pass", "erratum"]
    assert obj["params"]["q"] == "3/5" and isinstance(obj["params"]["m"], int)
    assert "/" in obj["lhs"]


def test_parallel_matches_serial():
    ids = ["E12", "E30", "T5b", "E34"]
    serial = list(report_lines(run_registry(SMALL, ids=ids)))
    assert list(report_lines(run_registry(SMALL, ids=ids, workers=3))) == serial
