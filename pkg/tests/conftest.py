from fractions import Fraction

import pytest

QS = (Fraction(2), Fraction(1, 2), Fraction(3, 5), Fraction(4), Fraction(5, 3))


@pytest.fixture(params=QS, ids=str)
def q(request):
    return request.param
