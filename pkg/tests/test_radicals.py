from __future__ import annotations

import math
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from sumspec.radicals import Surd, compare, factorize, iroot

F = Fraction


def test_factorize_and_iroot():
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert iroot(80, 2) == 8 and iroot(81, 4) == 3


def test_perfect_powers_are_rational():
    assert Surd.power(4, F(1, 2)).to_fraction() == 2
    assert Surd.power(4, F(-1, 2)).to_fraction() == F(1, 2)
    assert not Surd.power(2, F(1, 2)).is_rational()


def test_sqrt2_squared():
    r = Surd.power(2, F(-1, 2))
    assert (r * r).to_fraction() == F(1, 2)


def test_sign_of_cancelling_sum():
    # 2^(-1/2) - 7/10 > 0 and 2^(-1/2) - 71/100 < 0
    r = Surd.power(2, F(-1, 2))
    assert (r - F(7, 10)).sign() == 1
    assert (r - F(71, 100)).sign() == -1
    assert (r - r).is_zero()


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
bases = st.integers(2, 12)
exps = st.sampled_from([F(1, 2), F(1, 3), F(3, 2), F(2, 3), F(1)])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(coeffs, bases, exps), min_size=1, max_size=3), coeffs)
def test_bounds_and_compare_match_floats(terms, q):
    x = sum((Surd.power(b, e) * c for c, b, e in terms), Surd.of(0))
    approx = sum(float(c) * b ** float(e) for c, b, e in terms)
    lo, hi = x.bounds()
    assert lo <= hi
    assert float(lo) - 1e-12 <= approx <= float(hi) + 1e-12
    assert math.isclose(float(x), approx, rel_tol=1e-9, abs_tol=1e-12)
    if abs(approx - float(q)) > 1e-9:
        assert compare(x, q) == (1 if approx > float(q) else -1)
