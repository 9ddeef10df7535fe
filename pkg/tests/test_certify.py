from fractions import Fraction

import pytest

from qeuler import identities
from qeuler.certify import DegreeBound, certify, degree_bound
from qeuler.identities import REGISTRY, Identity

FIXED = {"m": 2, "h": 1, "k": 2, "l": 3, "i": 1}
CORRECTED = [i for i, ident in REGISTRY.items() if not ident.literal]


@pytest.mark.parametrize("ident_id", CORRECTED)
def test_identity_certified(ident_id):
    fixed = {p: v for p, v in FIXED.items() if p in REGISTRY[ident_id].params}
    cert = certify(ident_id, fixed)
    assert cert.passed
    names = [n for n in ("q", "tau", "tau2") if n in REGISTRY[ident_id].params]
    expected = 1
    for n in names:
        expected *= cert.degrees[n] + 1
    assert cert.points == expected


def test_degree_arithmetic():
    q = DegreeBound.variable(0)
    expr = (1 - q**3) / (1 + q)
    assert expr.num[0] == 3 and expr.den[0] == 1
    assert (q**-2).den[0] == 2
    assert not (q == 0) and q != 1


def test_degree_bound_reports_used_variables():
    degrees = degree_bound("E13", {"m": 2, "h": 1})
    assert set(degrees) == {"q", "tau"}
    assert degrees["tau"] >= 2


def test_false_identity_is_caught(monkeypatch):
    # agrees with the true value at q = 2 and q = 3, the first two grid points
    def sides(m, q):
        e = identities.E(m, 1, 1, q)
        return e, e + (q - 2) * (q - 3)

    fake = Identity("FAKE", "planted", ("m", "q"), sides)
    monkeypatch.setitem(REGISTRY, "FAKE", fake)
    cert = certify("FAKE", {"m": 2})
    assert not cert.passed
    assert cert.points == 3
