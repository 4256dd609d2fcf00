"""Ring axioms, canonical form, text round-trips for weight polynomials."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rbcalc.scalar import LAMBDA, ONE, ZERO, Scalar, scalar_add, scalar_eval, scalar_mul

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=12)
scalars = st.builds(
    Scalar.from_terms,
    st.lists(st.tuples(st.integers(min_value=0, max_value=5), rationals), max_size=5),
)


def test_constants():
    assert ZERO.is_zero and not ONE.is_zero
    assert ONE.constant_value() == 1
    assert LAMBDA.evaluate(7) == 7
    assert not LAMBDA.is_constant


def test_canonical_form_collapses_and_drops_zeros():
    s = Scalar.from_terms([(2, 1), (0, 3), (2, -1), (1, "1/2"), (1, "1/2")])
    assert s.terms == ((0, Fraction(3)), (1, Fraction(1)))


@given(scalars, scalars)
def test_add_commutes(a, b):
    assert scalar_add(a, b) == scalar_add(b, a)


@given(scalars, scalars, scalars)
def test_mul_distributes(a, b, c):
    assert scalar_mul(a, b + c) == scalar_mul(a, b) + scalar_mul(a, c)


@given(scalars, scalars, scalars)
def test_mul_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(scalars)
def test_additive_inverse(a):
    assert (a - a).is_zero
    assert a + ZERO == a
    assert a * ONE == a


@given(scalars, scalars, rationals)
def test_evaluation_is_a_ring_map(a, b, x):
    # evaluation at any rational point commutes with the ring structure
    assert scalar_eval(a + b, x) == scalar_eval(a, x) + scalar_eval(b, x)
    assert scalar_eval(a * b, x) == scalar_eval(a, x) * scalar_eval(b, x)


@given(scalars)
def test_render_parse_round_trip(a):
    assert Scalar.parse(a.render()) == a


def test_render_examples():
    assert ZERO.render() == "0"
    assert (ONE + LAMBDA).render() == "1 + l"
    s = Scalar.from_terms([(0, 2), (1, "-3/2"), (2, 1)])
    assert s.render() == "2 - 3/2*l + l^2"
    assert Scalar.parse("2 - 3/2*l + l^2") == s
    assert Scalar.parse("-l") == -LAMBDA
    assert Scalar.parse("5/3") == Scalar.rational("5/3")


def test_parse_rejects_garbage():
    for bad in ["", "l^", "2 3", "x", "1 +", "--l"]:
        with pytest.raises(ValueError):
            Scalar.parse(bad)


def test_constant_value_guards_weight_dependence():
    with pytest.raises(ValueError):
        LAMBDA.constant_value()


@given(scalars, st.integers(min_value=0, max_value=3))
def test_power_matches_repeated_product(a, k):
    expected = ONE
    for _ in range(k):
        expected = expected * a
    assert a**k == expected
