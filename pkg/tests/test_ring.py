import cmath
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coloredtl.ring import (
    DELTA,
    ONE,
    ZERO,
    A,
    LaurentPoly,
    PoleError,
    RationalFn,
    common_denominator,
    delta_closed,
    eval_complex,
    qint,
    rsum,
)
from conftest import laurent, nonzero_laurent, rational

Ainv = LaurentPoly({-1: 1})


def test_quantum_integers():
    assert qint(0).is_zero()
    assert qint(1) == LaurentPoly({0: 1})
    assert qint(2) == LaurentPoly({2: 1, -2: 1})
    assert qint(3) == LaurentPoly({4: 1, 0: 1, -4: 1})


def test_loop_values():
    assert delta_closed(0) == LaurentPoly({0: 1})
    assert delta_closed(1) == LaurentPoly({2: -1, -2: -1})
    assert delta_closed(2) == LaurentPoly({4: 1, 0: 1, -4: 1})
    assert DELTA == delta_closed(1)


def test_loop_value_recurrence():
    for n in range(1, 33):
        assert delta_closed(n + 1) == DELTA * delta_closed(n) - delta_closed(n - 1)


def test_division_cancels_to_laurent():
    q = RationalFn(LaurentPoly({2: 1, -2: -1}), LaurentPoly({1: 1, -1: -1}))
    assert q.is_laurent()
    assert q.to_laurent() == LaurentPoly({1: 1, -1: 1})
    assert RationalFn(A) * RationalFn(1, A) == ONE


def test_canonical_denominator():
    x = RationalFn(LaurentPoly({0: 2}), LaurentPoly({0: -4, 2: -6}))
    d = x.den.coeffs
    assert x.den.min_exp == 0
    assert d[0] > 0
    assert math.gcd(*[int(c) for c in d.values()]) == 1
    assert x == RationalFn(-1, LaurentPoly({0: 2, 2: 3}))


def test_hash_agrees_between_types():
    assert hash(A) == hash(RationalFn(A))
    assert RationalFn(A) == A


def test_unit_monomial_detection():
    assert RationalFn(LaurentPoly({-7: -1})).unit_monomial() == (-1, -7)
    assert RationalFn(LaurentPoly({2: 2})).unit_monomial() is None
    assert RationalFn(1, DELTA).unit_monomial() is None


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        RationalFn(1, 0)


def test_evaluation_examples():
    assert eval_complex(A * A, 1j) == pytest.approx(-1)
    assert eval_complex(DELTA, 1) == pytest.approx(-2)
    assert abs(eval_complex(qint(2), cmath.exp(1j * math.pi / 4))) < 1e-15


def test_pole_detection():
    f = RationalFn(1, LaurentPoly({0: 1, 1: -1}))
    with pytest.raises(PoleError):
        f.eval_complex(1.0)


def test_string_form():
    assert str(A**7 + A**3 + Ainv - LaurentPoly({-9: 1})) == "A^7 + A^3 + A^-1 - A^-9"


def test_common_denominator_is_lcm():
    d1 = LaurentPoly({0: 1, 2: 1})
    d2 = LaurentPoly({0: 1, 1: 1})
    Q = common_denominator([RationalFn(1, d1), RationalFn(A, d2 * d1), ONE])
    assert Q == d1 * d2


def test_rsum_matches_sequential_sum():
    vals = [RationalFn(LaurentPoly({j: j + 1}), LaurentPoly({0: 1, 2: j % 3 + 1})) for j in range(12)]
    acc = ZERO
    for v in vals:
        acc = acc + v
    assert rsum(vals) == acc


@given(laurent(), laurent(), laurent())
@settings(max_examples=1000)
def test_laurent_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()


@given(rational(), rational(), rational())
@settings(max_examples=1000)
def test_rational_field_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + (-x)).is_zero()
    if not x.is_zero():
        assert x * x.inverse() == ONE


@given(rational(), rational())
@settings(max_examples=300)
def test_equality_by_cross_multiplication(x, y):
    same = (x.num * y.den) == (y.num * x.den)
    assert (x == y) == same


@given(laurent(max_terms=8, span=50, coeff=20), laurent(max_terms=8, span=50, coeff=20), st.floats(0, 2 * math.pi))
@settings(max_examples=300)
def test_evaluation_is_multiplicative(f, g, t):
    z = cmath.exp(1j * t)
    lhs = eval_complex(f * g, z)
    rhs = eval_complex(f, z) * eval_complex(g, z)
    scale = max(1.0, abs(lhs), abs(rhs))
    assert abs(lhs - rhs) <= 1e-10 * scale


@given(rational())
@settings(max_examples=200)
def test_json_round_trip(x):
    assert RationalFn.from_json(json.loads(json.dumps(x.to_json()))) == x


@given(laurent())
def test_triples_round_trip(p):
    assert LaurentPoly.from_triples(p.to_triples()) == p


def test_fractional_coefficients():
    p = LaurentPoly({1: Fraction(1, 3)})
    assert (p * 3) == A
    assert not p.is_integral()
