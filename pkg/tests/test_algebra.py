from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recip.algebra import (
    ElliottRational,
    ElliottTerm,
    FactorClass,
    OrderSpec,
    VariableSpace,
    classify_factor,
    equals,
    format_rational,
    from_dict,
    is_zero,
    orient_term,
    series_truncate,
    substitute_inverse,
    to_dict,
)
from recip.errors import InvalidFactor, InvalidInput, NotPowerSeriesExpandable, SingularOrder

S12 = VariableSpace(1, 2)
X1 = VariableSpace(0, 1)


def one_minus(space, mono):
    return ElliottRational(
        space, (ElliottTerm.make(1, space.zero()), ElliottTerm.make(-1, mono))
    )


def test_case1_last_coordinate_dominates():
    o = OrderSpec.case1()
    assert o.sign((5, -1, 0)) == -1  # x1^-1 beats l1^5
    assert o.sign((-5, 0, 1)) == 1
    assert o.sign((1, 0, 0)) == 1
    assert o.sign((0, 0, 0)) == 0
    assert o.reverse().sign((1, 0, 0)) == -1


def test_case2_total_degree_first():
    o = OrderSpec.case2(1)
    assert o.sign((-3, 1, 0)) == 1
    assert o.sign((3, 1, -2)) == -1
    # degree 0: the lambda part decides
    assert o.sign((1, 1, -1)) == 1
    assert o.sign((0, 1, -1)) == -1  # then x2 before x1


def test_lambda_adic_preorder():
    at0 = OrderSpec.lambda_adic(0)
    inf = OrderSpec.lambda_adic(0, at_infinity=True)
    assert at0.sign((2, -7)) == 1 and inf.sign((2, -7)) == -1
    assert at0.sign((0, 3)) == 0


def test_matrix_order_and_singular_matrix():
    o = OrderSpec.from_matrix([[1, 0], [0, -1]])
    assert o.sign((0, 1)) == -1
    with pytest.raises(SingularOrder):
        OrderSpec.from_matrix([[1, 2], [2, 4]])


def test_compare_is_consistent_with_sign():
    o = OrderSpec.case1()
    assert o.compare((0, 1, 0), (5, 0, 0)) == 1
    assert o.compare((5, 0, 0), (0, 1, 0)) == -1
    assert o.compare((1, 1, 1), (1, 1, 1)) == 0


def test_classify_factor():
    o = OrderSpec.case1()
    assert classify_factor((1, 1, 0), 0, o) is FactorClass.PT
    assert classify_factor((1, -1, 0), 0, o) is FactorClass.NT  # oriented: l^-1 x1
    assert classify_factor((0, 1, 0), 0, o) is FactorClass.LAMBDA_FREE


def test_orientation_preserves_value():
    o = OrderSpec.case1()
    t = ElliottTerm.make(2, (1, 0, 0), [((1, -1, 0), 2), ((-1, 0, 1), 1)])
    u = orient_term(t, o)
    assert all(o.sign(m) > 0 for m, _ in u.den)
    assert equals(ElliottRational(S12, (t,)), ElliottRational(S12, (u,)))


def test_factor_one_rejected():
    with pytest.raises(InvalidFactor):
        ElliottTerm.make(1, (0, 0, 0), [((0, 0, 0), 1)])


def test_zero_test_on_partial_fraction_identity():
    # 1/((1-x)(1-y)) - 1/(1-xy) * (1/(1-x) + 1/(1-y) - 1) == 0
    S = VariableSpace(0, 2)
    lhs = ElliottRational.term(S, 1, (0, 0), [((1, 0), 1), ((0, 1), 1)])
    g = ElliottRational.geometric(S, (1, 1))
    rhs = g * (ElliottRational.geometric(S, (1, 0)) + ElliottRational.geometric(S, (0, 1)) - 1)
    assert is_zero(lhs - rhs)
    assert not is_zero(lhs - rhs + ElliottRational.monomial(S, (1, 1), Fraction(1, 10**9)))


def test_geometric_times_binomial_is_one():
    assert equals(ElliottRational.geometric(X1, (1,)) * one_minus(X1, (1,)), ElliottRational.constant(X1, 1))


def test_reciprocal_of_geometric():
    # 1/(1-1/x) = -x/(1-x)
    left = ElliottRational.geometric(X1, (-1,))
    right = ElliottRational.term(X1, -1, (1,), [((1,), 1)])
    assert equals(left, right)


def test_substitute_inverse_only_touches_x():
    F = ElliottRational.term(S12, 1, (2, 1, 0), [((1, 1, 1), 1)])
    G = substitute_inverse(F)
    assert G.terms[0].num == (2, -1, 0)
    assert G.terms[0].den == (((1, -1, -1), 1),)
    assert equals(substitute_inverse(G), F)


def test_series_truncate_multiplicity():
    F = ElliottRational.geometric(X1, (1,), 2)
    assert series_truncate(F, 4) == {(k,): k + 1 for k in range(5)}


def test_series_truncate_rejects_lambda_factor():
    with pytest.raises(NotPowerSeriesExpandable):
        series_truncate(ElliottRational.geometric(S12, (1, 1, 0)), 3)


def test_dict_round_trip():
    F = ElliottRational.term(S12, Fraction(-3, 4), (1, 0, 2), [((1, 1, 0), 2), ((0, 0, 1), 1)])
    doc = to_dict(F)
    assert doc["terms"][0]["coef"] == "-3/4"
    assert equals(from_dict(doc), F)


def test_from_dict_rejects_wrong_length():
    with pytest.raises(InvalidInput):
        from_dict({"r": 1, "n": 1, "terms": [{"coef": "1", "num": [0], "den": []}]})


def test_text_form():
    X2 = VariableSpace(0, 2)
    F = ElliottRational.term(X2, 1, (3, 1), [((1, 0), 1), ((0, 1), 2)])
    assert format_rational(F) == "x1^3*x2/(1-x1)(1-x2)^2"


vectors = st.tuples(*[st.integers(-3, 3)] * 3).filter(any)
factor_lists = st.lists(st.tuples(vectors, st.integers(1, 2)), min_size=0, max_size=3)


@given(st.integers(-3, 3).filter(bool), st.tuples(*[st.integers(-2, 2)] * 3), factor_lists)
def test_orientation_never_changes_the_function(coef, num, factors):
    t = ElliottTerm.make(coef, num, factors)
    F = ElliottRational(S12, (t,))
    for o in (OrderSpec.case1(), OrderSpec.case1(True), OrderSpec.case2(1)):
        assert equals(F, ElliottRational(S12, (orient_term(t, o),)))


@given(st.integers(-3, 3).filter(bool), st.tuples(*[st.integers(-2, 2)] * 3), factor_lists)
def test_subtraction_gives_zero(coef, num, factors):
    F = ElliottRational.term(S12, coef, num, factors)
    assert is_zero(F - F)
    assert not is_zero(F)
    assert equals(F + F, F * 2)


@given(vectors, vectors)
def test_order_is_compatible_with_multiplication(a, b):
    for o in (OrderSpec.case1(), OrderSpec.case2(1), OrderSpec.from_matrix([[1, 1, 0], [0, 1, 0], [0, 0, 2]])):
        if o.sign(a) > 0 and o.sign(b) > 0:
            assert o.sign(tuple(x + y for x, y in zip(a, b))) > 0
        assert o.sign(a) == -o.sign(tuple(-x for x in a))
