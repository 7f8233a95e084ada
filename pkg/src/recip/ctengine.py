"""Constant-term extraction by Elliott reduction.

Every term is first oriented so that each denominator monomial is larger than
1 under the chosen order; its expansion is then ``sum_k m^k``.  While a term
has a factor with positive and a factor with negative lambda exponent, the
pair is split with

    1/((1-A)(1-B)) = 1/(1-AB) * (1/(1-A) + 1/(1-B) - 1).

Once every lambda-dependent factor has the same sign the constant term is a
finite sum read off directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    ElliottRational,
    ElliottTerm,
    FactorClass,
    OrderKind,
    OrderSpec,
    VariableSpace,
    _merge_factors,
    classify_factor,
    negative_binomial,
    orient_term,
    vadd,
    vscale,
)
from .errors import (
    InvalidFactor,
    NoMixedPair,
    NotOriented,
    NotPowerSeriesExpandable,
    TermBudgetExceeded,
    UnsupportedOrder,
)

DEFAULT_BUDGET = 200_000
TRACE_EVERY = 1000


@dataclass
class ReductionState:
    """Bookkeeping for one ``ct_lambda`` run; also what ``--trace`` reports."""

    lam: int
    order: OrderSpec
    budget: int = DEFAULT_BUDGET
    steps: int = 0
    live: int = 0
    max_live: int = 0
    extracted: int = 0
    measure: int = 0
    trace: object = field(default=None, repr=False)

    def record(self, event: str):
        if self.trace is not None:
            self.trace(
                {
                    "event": event,
                    "lambda": self.lam + 1,
                    "order": self.order.describe(),
                    "steps": self.steps,
                    "live": self.live,
                    "max_live": self.max_live,
                    "extracted": self.extracted,
                    "measure": self.measure,
                }
            )


def lambda_measure(t: ElliottTerm, lam: int) -> int:
    """Sum of |lambda exponent| over the denominator factors, with multiplicity."""
    return sum(abs(m[lam]) * mult for m, mult in t.den)


def reduction_measure(t: ElliottTerm, lam: int) -> tuple:
    """Well-founded measure that every Elliott step strictly decreases.

    ``(M, c, k)``: the largest |lambda exponent| ``M``, how many factors attain
    it, and how many factors have the sign opposite to those extreme factors.
    The plain sum of |exponents| is not monotone.
    """
    top = 0
    count = 0
    sign = 0
    for m, mult in t.den:
        a = abs(m[lam])
        if a > top:
            top, count, sign = a, mult, (1 if m[lam] > 0 else -1)
        elif a and a == top:
            count += mult
            if m[lam] > 0:
                sign = 1
    opposite = sum(mult for m, mult in t.den if m[lam] * sign < 0)
    return (top, count, opposite)


def _mixed_pair(t: ElliottTerm, lam: int):
    """Pair the factor of largest |lambda exponent| with an opposite-sign one.

    Returns ``(A, B)`` with ``A`` the extreme factor, or None when all
    lambda-dependent factors share a sign.  Of the opposite-sign factors the
    one of largest magnitude is taken (first in factor order on ties).
    """
    has_pos = has_neg = False
    best = None
    for m, _ in t.den:
        a = m[lam]
        if a > 0:
            has_pos = True
        elif a < 0:
            has_neg = True
        else:
            continue
        if best is None or abs(a) > abs(best[lam]) or (abs(a) == abs(best[lam]) and a > 0 > best[lam]):
            best = m
    if not (has_pos and has_neg):
        return None
    sign = best[lam] > 0
    partner = None
    for m, _ in t.den:
        a = m[lam]
        if a and (a > 0) != sign and (partner is None or abs(a) > abs(partner[lam])):
            partner = m
    return best, partner


def _split(t: ElliottTerm, A, B, order: OrderSpec):
    AB = vadd(A, B)
    if not any(AB):
        raise InvalidFactor("A*B == 1; the pair was not oriented")
    rest = []
    for m, mult in t.den:
        if m == A or m == B:
            mult -= 1
        if mult:
            rest.append((m, mult))
    out = (
        ElliottTerm(t.coef, t.num, _merge_factors(rest + [(AB, 1), (A, 1)])),
        ElliottTerm(t.coef, t.num, _merge_factors(rest + [(AB, 1), (B, 1)])),
        ElliottTerm(-t.coef, t.num, _merge_factors(rest + [(AB, 1)])),
    )
    return [orient_term(s, order) for s in out]


def elliott_step(t: ElliottTerm, lam: int, order: OrderSpec) -> list:
    """Apply the Elliott identity to one mixed-sign pair of ``t`` (see ``_mixed_pair``)."""
    if any(order.sign(m) < 0 for m, _ in t.den):
        raise NotOriented("every factor monomial must be larger than 1 before a step")
    pair = _mixed_pair(t, lam)
    if pair is None:
        raise NoMixedPair("term has no factors of opposite lambda sign")
    out = _split(t, pair[0], pair[1], order)
    before = reduction_measure(t, lam)
    for s in out:
        assert reduction_measure(s, lam) < before, "Elliott step did not decrease the measure"
    return out


def _exact_compositions(weights, target):
    """All ``k >= 0`` with ``sum k_j * weights_j == target`` (weights positive)."""
    if not weights:
        if target == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    if not rest:
        if target % w == 0:
            yield (target // w,)
        return
    for k in range(target // w + 1):
        for tail in _exact_compositions(rest, target - k * w):
            yield (k,) + tail


def _extract(t: ElliottTerm, lam: int):
    """Constant term in lambda of a term whose lambda factors share one sign."""
    dep = []
    free = []
    for m, mult in t.den:
        (dep if m[lam] else free).append((m, mult))
    c = t.num[lam]
    if not dep:
        if c == 0:
            yield t
        return
    positive = dep[0][0][lam] > 0
    target = -c if positive else c
    if target < 0:
        return
    free = tuple(free)
    weights = [abs(m[lam]) for m, _ in dep]
    for ks in _exact_compositions(weights, target):
        coef = t.coef
        num = t.num
        for k, (m, mult) in zip(ks, dep):
            if k:
                coef *= negative_binomial(k, mult)
                num = vadd(num, vscale(k, m))
        yield ElliottTerm(coef, num, free)


def ct_lambda(
    F: ElliottRational,
    lam: int,
    order: OrderSpec,
    *,
    budget: int = DEFAULT_BUDGET,
    trace=None,
) -> ElliottRational:
    """Constant term of ``F`` in the variable with coordinate index ``lam``.

    ``F`` is expanded in the Malcev-Neumann field of ``order`` (or at lambda=0
    / lambda=infinity for the lambda-adic preorders).
    """
    if order.kind is OrderKind.LAMBDA_ADIC and order.lam != lam:
        raise UnsupportedOrder("lambda-adic order refers to a different variable")
    state = ReductionState(lam, order, budget, trace=trace)
    pending: dict = {}
    stack: list = []

    def push(t):
        key = t.key
        if key in pending:
            pending[key] += t.coef
        else:
            pending[key] = t.coef
            stack.append(key)

    for t in F.terms:
        push(orient_term(t, order))
    result: dict = {}
    while stack:
        key = stack.pop()
        coef = pending.pop(key)
        if not coef:
            continue
        t = ElliottTerm(coef, *key)
        pair = _mixed_pair(t, lam)
        if pair is None:
            for s in _extract(t, lam):
                result[s.key] = result.get(s.key, 0) + s.coef
                state.extracted += 1
            continue
        state.steps += 1
        state.measure = lambda_measure(t, lam)
        for s in _split(t, pair[0], pair[1], order):
            push(s)
        state.live = len(pending)
        if state.live > state.max_live:
            state.max_live = state.live
        if state.live > budget:
            state.record("budget-exceeded")
            raise TermBudgetExceeded(state.live, budget)
        if trace is not None and state.steps % TRACE_EVERY == 0:
            state.record("progress")
    state.live = 0
    state.record("done")
    terms = tuple(
        ElliottTerm(Fraction(c), num, den) for (num, den), c in sorted(result.items()) if c
    )
    return ElliottRational(F.space, terms)


def ct_at_zero(F: ElliottRational, lam: int, **kw) -> ElliottRational:
    """Constant term of the Laurent expansion in lambda around 0."""
    return ct_lambda(F, lam, OrderSpec.lambda_adic(lam, at_infinity=False), **kw)


def ct_at_infinity(F: ElliottRational, lam: int, **kw) -> ElliottRational:
    return ct_lambda(F, lam, OrderSpec.lambda_adic(lam, at_infinity=True), **kw)


def i_operator(F: ElliottRational, lam: int, **kw) -> ElliottRational:
    """Sum of the constant terms at lambda = 0 and lambda = infinity."""
    return (ct_at_zero(F, lam, **kw) + ct_at_infinity(F, lam, **kw)).collect()


def rho_factorization(den, lam: int, order: OrderSpec):
    """Split a factor multiset into (PT part, NT part, lambda-free part)."""
    if not order.is_total:
        raise UnsupportedOrder("rho-factorization needs a total order")
    parts = {FactorClass.PT: [], FactorClass.NT: [], FactorClass.LAMBDA_FREE: []}
    for m, mult in den:
        parts[classify_factor(m, lam, order)].append((m, mult))
    return parts[FactorClass.PT], parts[FactorClass.NT], parts[FactorClass.LAMBDA_FREE]


def ct_all(
    F: ElliottRational,
    order: OrderSpec,
    lambdas=None,
    **kw,
) -> ElliottRational:
    """Iterated constant term over ``lambdas`` (coordinate indices, default all)."""
    for lam in range(F.space.r) if lambdas is None else lambdas:
        F = ct_lambda(F, lam, order, **kw)
    return F


def hadamard_product(f: ElliottRational, g: ElliottRational, **kw) -> ElliottRational:
    """``sum f_k g_k x^k`` as ``CT_l f(l) g(x/l)`` in the iterated field on (l, x)."""
    for h in (f, g):
        if h.space.r != 0 or h.space.n != 1:
            raise UnsupportedOrder("Hadamard products are for univariate series in x")
    order = OrderSpec.case1()
    f = ElliottRational(f.space, tuple(orient_term(t, order) for t in f.terms))
    g = ElliottRational(g.space, tuple(orient_term(t, order) for t in g.terms))
    for h in (f, g):
        if any(t.num[0] < 0 for t in h.terms):
            raise NotPowerSeriesExpandable("Hadamard factors must be power series in x")
    names = ("l",) + (f.space.names or ("x",))
    space = VariableSpace(1, 1, names)
    f_l = f.map_exponents(lambda v: (v[0], 0), space)
    g_xl = g.map_exponents(lambda v: (-v[0], v[0]), space)
    out = ct_lambda(f_l * g_xl, 0, order, **kw)
    return out.drop_lambdas()
