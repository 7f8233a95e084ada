from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recip.algebra import ElliottRational, ElliottTerm, OrderSpec, VariableSpace, equals, is_zero
from recip.ctengine import (
    _mixed_pair,
    ct_all,
    ct_at_infinity,
    ct_at_zero,
    ct_lambda,
    elliott_step,
    hadamard_product,
    i_operator,
    reduction_measure,
    rho_factorization,
)
from recip.algebra import series_truncate
from recip.ldsystem import LDSystem
from recip.oracle import enumerate_solutions, indicator_series
from recip.errors import NoMixedPair, NotOriented, NotPowerSeriesExpandable, TermBudgetExceeded, UnsupportedOrder
from recip.parsing import parse_rational

S11 = VariableSpace(1, 1)
S12 = VariableSpace(1, 2)
X1 = VariableSpace(0, 1)
X2 = VariableSpace(0, 2)
CASE1 = OrderSpec.case1()


def pair_function():
    # 1/((1 - l x)(1 - y/l))
    return ElliottRational.term(S12, 1, (0, 0, 0), [((1, 1, 0), 1), ((-1, 0, 1), 1)])


def test_ct_of_pair():
    got = ct_lambda(pair_function(), 0, CASE1).drop_lambdas()
    assert equals(got, ElliottRational.geometric(X2, (1, 1)))


def test_ct_of_pair_reversed_order():
    got = ct_lambda(pair_function(), 0, CASE1.reverse()).drop_lambdas()
    assert equals(got, -ElliottRational.geometric(X2, (1, 1)))


def test_ct_at_both_ends_of_pair_vanish():
    F = pair_function()
    assert is_zero(ct_at_zero(F, 0)) and is_zero(ct_at_infinity(F, 0))
    assert is_zero(i_operator(F, 0))


def test_single_factor():
    F = ElliottRational.geometric(S11, (1, 1))
    assert equals(ct_lambda(F, 0, CASE1), ElliottRational.constant(S11, 1))
    assert is_zero(ct_lambda(F, 0, CASE1.reverse()))
    assert equals(i_operator(F, 0), ElliottRational.constant(S11, 1))


def test_numerator_power_selects_coefficient():
    # CT l^-3 / (1 - l x) = x^3
    F = ElliottRational.term(S11, 1, (-3, 0), [((1, 1), 1)])
    assert equals(ct_lambda(F, 0, CASE1), ElliottRational.monomial(S11, (0, 3)))


def test_repeated_factor_extraction():
    # CT l^-2 / (1 - l x)^3 = C(4, 2) x^2
    F = ElliottRational.term(S11, 1, (-2, 0), [((1, 1), 3)])
    assert equals(ct_lambda(F, 0, CASE1), ElliottRational.monomial(S11, (0, 2), 6))


def test_two_lambda_example():
    S = VariableSpace(2, 3)
    factors = [((3, -1, 1, 0, 0), 1), ((-1, 1, 0, 1, 0), 1), ((-2, -1, 0, 0, 1), 1)]
    F = ElliottRational.term(S, 1, (-1, 0, 0, 0, 0), factors)
    got = ct_all(F, CASE1).drop_lambdas()
    want = ElliottRational.term(VariableSpace(0, 3), 1, (2, 3, 1), [((3, 5, 2), 1)])
    assert equals(got, want)


def test_minimal_pair_cycle_is_avoided():
    # lambda exponents {2, -1, -2}: pairing the cheapest mixed pair cycles
    S = VariableSpace(1, 3)
    F = ElliottRational.term(S, 1, (0, 0, 0, 0), [((2, 1, 0, 0), 1), ((-1, 0, 1, 0), 1), ((-2, 0, 0, 1), 1)])
    got = ct_lambda(F, 0, CASE1, budget=1000)
    sols = enumerate_solutions(LDSystem.make([[2, -1, -2]]), 8)
    assert series_truncate(got, 8) == indicator_series(sols, 1)


def test_step_requires_orientation_and_mixed_pair():
    t = ElliottTerm.make(1, (0, 0, 0), [((1, -1, 0), 1), ((-1, 0, 1), 1)])
    with pytest.raises(NotOriented):
        elliott_step(t, 0, CASE1)
    t = ElliottTerm.make(1, (0, 0, 0), [((1, 1, 0), 1), ((2, 0, 1), 1)])
    with pytest.raises(NoMixedPair):
        elliott_step(t, 0, CASE1)


def test_budget_exceeded():
    with pytest.raises(TermBudgetExceeded) as info:
        ct_lambda(pair_function(), 0, CASE1, budget=2)
    assert info.value.budget == 2


def test_trace_events():
    events = []
    ct_lambda(pair_function(), 0, CASE1, trace=events.append)
    assert events[-1]["event"] == "done"
    assert events[-1]["steps"] == 1


def test_rho_factorization():
    den = (((1, 1, 0), 1), ((-1, 0, 1), 2), ((0, 1, 1), 1))
    pt, nt, free = rho_factorization(den, 0, CASE1)
    assert pt == [((1, 1, 0), 1)] and nt == [((-1, 0, 1), 2)] and free == [((0, 1, 1), 1)]
    with pytest.raises(UnsupportedOrder):
        rho_factorization(den, 0, OrderSpec.lambda_adic(0))


def test_hadamard_examples():
    x = ("x",)
    f = parse_rational("1/(1-x)", x)
    assert equals(hadamard_product(f, f), f)
    g = parse_rational("1/(1-x)^2", x)
    assert equals(hadamard_product(g, g), parse_rational("(1+x)/(1-x)^3", x))


def test_hadamard_rejects_laurent_input():
    with pytest.raises(NotPowerSeriesExpandable):
        hadamard_product(parse_rational("1/x"), parse_rational("1/(1-x)"))


# properties ----------------------------------------------------------------

lam_exp = st.integers(-4, 4)
factor = st.tuples(st.tuples(lam_exp, st.integers(-2, 2), st.integers(-2, 2)).filter(any), st.integers(1, 2))


@st.composite
def single_lambda_functions(draw):
    factors = draw(st.lists(factor, min_size=1, max_size=3))
    num = (draw(st.integers(-4, 4)), draw(st.integers(-1, 1)), draw(st.integers(-1, 1)))
    return ElliottRational.term(S12, draw(st.integers(1, 3)), num, factors)


@given(single_lambda_functions())
def test_constant_terms_sum_to_i_operator(F):
    for order in (CASE1, OrderSpec.case2(1)):
        total = ct_lambda(F, 0, order) + ct_lambda(F, 0, order.reverse())
        assert equals(total, i_operator(F, 0))


@given(single_lambda_functions())
def test_every_step_decreases_the_measure(F):
    from recip.algebra import orient_term

    stack = [orient_term(F.terms[0], CASE1)]
    for _ in range(200):
        if not stack:
            break
        t = stack.pop()
        if _mixed_pair(t, 0) is None:
            continue
        for s in elliott_step(t, 0, CASE1):
            assert reduction_measure(s, 0) < reduction_measure(t, 0)
            stack.append(s)


@given(single_lambda_functions())
def test_result_is_lambda_free(F):
    out = ct_lambda(F, 0, CASE1)
    assert not out.depends_on(0)
