from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from eigengap.errors import ParameterError
from eigengap.exact import PiRational, as_positive, lcm, le_sqrt_form, to_rational


def test_to_rational_policy():
    assert to_rational(3) == 3
    assert to_rational("1.1") == Fraction(11, 10)
    assert to_rational("2/3") == Fraction(2, 3)
    assert to_rational(2.0) == 2
    assert to_rational(2.5) is None
    assert to_rational("abc") is None
    with pytest.raises(ParameterError):
        to_rational(True)


def test_as_positive_rejects_nonpositive():
    for bad in (0, -1, "-2/3", float("nan"), float("inf"), "x"):
        with pytest.raises(ParameterError):
            as_positive(bad, "side")
    assert as_positive(math.pi, "side") == math.pi


def test_pirational_arithmetic_and_json():
    u = PiRational(Fraction(16, 9), 2)
    assert float(u) == pytest.approx(16 * math.pi**2 / 9, rel=1e-15)
    assert (u * 4).coef == Fraction(64, 9)
    assert (u / PiRational(Fraction(1, 9), 2)) == PiRational(16, 0)
    assert PiRational.from_json(u.to_json()) == u
    assert str(PiRational(1, 2)) == "pi^2"
    assert str(PiRational(Fraction(1, 4), 2)) == "1/4*pi^2"


@given(st.fractions(min_value=-20, max_value=20), st.fractions(min_value=-20, max_value=20),
       st.fractions(min_value=0, max_value=20), st.fractions(min_value=0, max_value=20))
def test_le_sqrt_form_matches_float(x, a, b, r):
    lhs = float(x)
    rhs = float(a) + float(b) * math.sqrt(float(r))
    if abs(lhs - rhs) > 1e-9:
        assert le_sqrt_form(x, a, b, r) == (lhs <= rhs)


def test_lcm():
    assert lcm(4, 6, 10) == 60
    assert lcm() == 1
