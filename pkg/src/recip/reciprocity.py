"""Reciprocity checks: R-property, I-property, the single-equation criterion,
the contribution-sequence sufficient condition, error terms and homogeneous
reciprocity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ElliottRational, OrderSpec, equals, is_zero, substitute_inverse
from .ctengine import ct_all, ct_lambda, i_operator
from .errors import (
    AllZeroRow,
    IdentityViolation,
    InvalidInput,
    NoPositiveSolution,
    RankDeficient,
)
from .ldsystem import (
    ContributionSequence,
    LDSystem,
    MatrixForm,
    crude_E,
    crude_Ebar,
    format_equation,
    reduced_rows,
)
from .oracle import has_positive_solution

SUM_LEVEL = "sum"
PER_TERM = "per-term"


# ---------------------------------------------------------------------------
# one equation


def semigroup_contains(target: int, generators) -> bool:
    """Whether ``target`` is a nonnegative integer combination of ``generators``."""
    if target < 0:
        return False
    gens = sorted({g for g in generators if g > 0})
    if target == 0:
        return True
    if not gens:
        return False
    reach = bytearray(target + 1)
    reach[0] = 1
    for v in range(1, target + 1):
        for g in gens:
            if g > v:
                break
            if reach[v - g]:
                reach[v] = 1
                break
    return bool(reach[target])


def single_equation_r_property(a, b: int, *, allow_zero_row: bool = False) -> bool:
    """R-property of ``sum a_e alpha_e = b``.

    It fails exactly when one of the sign-constrained equations has a solution:
    ``N_a = -b - sum_{a_e>0} a_e`` or ``N_b = b - sum_{a_e<0} |a_e|`` is a
    member of the numerical semigroup generated by the ``|a_e|``.
    """
    a = [int(x) for x in a]
    if not any(a):
        if not allow_zero_row:
            raise AllZeroRow("equation has no nonzero coefficient")
        return b != 0
    gens = [abs(x) for x in a if x]
    n_a = -b - sum(x for x in a if x > 0)
    n_b = b - sum(-x for x in a if x < 0)
    return not (semigroup_contains(n_a, gens) or semigroup_contains(n_b, gens))


# ---------------------------------------------------------------------------
# R- and I-property


@dataclass
class RReport:
    holds: bool
    d: int
    ct: ElliottRational
    ct_reversed: ElliottRational


def r_property(F: ElliottRational, order: OrderSpec, d: int | None = None, **kw) -> RReport:
    """``CT^rho F == (-1)^d CT^rho-bar F`` (``d`` defaults to the number of lambdas)."""
    if d is None:
        d = F.space.r
    ct = ct_all(F, order, **kw)
    ct_rev = ct_all(F, order.reverse(), **kw)
    holds = equals(ct, ct_rev if d % 2 == 0 else -ct_rev)
    return RReport(holds, d, ct, ct_rev)


@dataclass
class IReport:
    holds: bool
    mode: str
    stage: int | None = None
    value: ElliottRational | None = None
    stages: list = field(default_factory=list)


def i_property(F: ElliottRational, order: OrderSpec, mode: str = SUM_LEVEL, **kw) -> IReport:
    """Vanishing of the I-operator at every stage of iterated elimination.

    ``sum`` tests the whole function at each stage; ``per-term`` tests every
    term of the current sum separately, which can only be stricter.
    """
    if mode not in (SUM_LEVEL, PER_TERM):
        raise InvalidInput(f"unknown I-property mode {mode!r}")
    current = F
    stages = []
    for lam in range(F.space.r):
        if mode == SUM_LEVEL:
            value = i_operator(current, lam, **kw)
            ok = is_zero(value)
        else:
            value = ElliottRational.zero(F.space)
            ok = True
            for t in current.terms:
                v = i_operator(ElliottRational(F.space, (t,)), lam, **kw)
                if not is_zero(v):
                    ok, value = False, v
                    break
        stages.append({"stage": lam + 1, "zero": ok})
        if not ok:
            return IReport(False, mode, lam + 1, value, stages)
        current = ct_lambda(current, lam, order, **kw)
    return IReport(True, mode, stages=stages)


@dataclass
class PropertyReport:
    r: RReport
    i: IReport

    @property
    def r_holds(self) -> bool:
        return self.r.holds

    @property
    def i_holds(self) -> bool:
        return self.i.holds


def property_report(F: ElliottRational, order: OrderSpec, mode: str = SUM_LEVEL, **kw) -> PropertyReport:
    rr = r_property(F, order, **kw)
    ir = i_property(F, order, mode, **kw)
    if ir.holds and not rr.holds:
        raise IdentityViolation("I-property holds but the R-property fails")
    return PropertyReport(rr, ir)


# ---------------------------------------------------------------------------
# contribution-sequence sufficient condition


@dataclass(frozen=True)
class CheckedRow:
    sequence: ContributionSequence
    coefficients: tuple
    rhs: int
    columns: tuple
    holds: bool
    degenerate: bool = False

    def equation(self) -> str:
        return format_equation(self.coefficients, self.rhs, self.columns)


@dataclass
class MonsterVerdict:
    """``holds`` means the sufficient condition is met; False is inconclusive."""

    holds: bool
    checked: list
    failure: CheckedRow | None = None


def monster_check(T: MatrixForm, order: OrderSpec, trace=None) -> MonsterVerdict:
    checked = []
    failure = None
    for seq, coeffs, rhs, cols in reduced_rows(T, order, trace=trace):
        degenerate = not any(coeffs)
        if degenerate and trace is not None:
            trace({"event": "zero-row", "sequence": list(seq.indices)})
        ok = single_equation_r_property(coeffs, rhs, allow_zero_row=True)
        row = CheckedRow(seq, coeffs, rhs, cols, ok, degenerate)
        checked.append(row)
        if not ok and failure is None:
            failure = row
    return MonsterVerdict(failure is None, checked, failure)


# ---------------------------------------------------------------------------
# error terms


@dataclass
class ErrorTermDecomposition:
    terms: list
    lhs: ElliottRational
    rhs: ElliottRational


def error_terms(F: ElliottRational, order: OrderSpec, **kw) -> ErrorTermDecomposition:
    """``E_i = (-1)^i CT^rev_{l_{i+2}..l_r} I_{l_{i+1}} CT_{l_1..l_i} F``.

    Verifies ``CT^rev F = (-1)^r CT F + sum E_i`` and raises
    :class:`IdentityViolation` otherwise.
    """
    r = F.space.r
    rev = order.reverse()
    terms = []
    inner = F
    for i in range(r):
        value = i_operator(inner, i, **kw)
        value = ct_all(value, rev, range(i + 1, r), **kw)
        terms.append(value if i % 2 == 0 else -value)
        inner = ct_lambda(inner, i, order, **kw)
    forward = inner
    lhs = ct_all(F, rev, **kw)
    rhs = forward if r % 2 == 0 else -forward
    for t in terms:
        rhs = rhs + t
    if not equals(lhs, rhs):
        raise IdentityViolation("error-term identity failed")
    return ErrorTermDecomposition(terms, lhs, rhs)


# ---------------------------------------------------------------------------
# homogeneous systems


@dataclass
class HomogeneousReport:
    E: ElliottRational
    Ebar: ElliottRational
    sign: int
    holds: bool


def homogeneous_reciprocity(A, order: OrderSpec | None = None, **kw) -> HomogeneousReport:
    """Check ``E(x) = (-1)^{n-r} Ebar(1/x)`` for ``A alpha = 0``."""
    order = order or OrderSpec.case1()
    sys = LDSystem.make(A)
    if sys.rank() < sys.r:
        raise RankDeficient(f"matrix has rank {sys.rank()} < {sys.r}")
    if not has_positive_solution(sys.A):
        raise NoPositiveSolution("the system has no solution in positive integers")
    crude = crude_E(sys)
    E = ct_all(crude, order, **kw)
    Ebar = ct_all(substitute_inverse(crude), order, **kw)
    if sys.n % 2:
        Ebar = -Ebar
    direct = ct_all(crude_Ebar(sys), order, **kw)
    if not equals(Ebar, direct):
        raise IdentityViolation("the two constructions of the positive-solution function differ")
    sign = -1 if (sys.n - sys.r) % 2 else 1
    flipped = substitute_inverse(Ebar)
    holds = equals(E, flipped if sign > 0 else -flipped)
    return HomogeneousReport(E.drop_lambdas(), Ebar.drop_lambdas(), sign, holds)


@dataclass
class DomainReport:
    ct: ElliottRational
    ct_reversed: ElliottRational
    classification: str
    r_holds: bool


def rec_domain_check(T: MatrixForm, order: OrderSpec, **kw) -> DomainReport:
    """Classify ``CT`` and reversed ``CT`` of a homogeneous matrix form.

    The R-property must hold exactly when the two are not of mixed kind
    (one zero, the other not).
    """
    if any(T.rhs):
        raise InvalidInput("the domain check applies to homogeneous systems")
    if T.rank() < T.height:
        raise RankDeficient(f"matrix has rank {T.rank()} < {T.height}")
    rr = r_property(T.to_rational(), order, **kw)
    z1, z2 = is_zero(rr.ct), is_zero(rr.ct_reversed)
    kind = "both-zero" if z1 and z2 else "both-nonzero" if not (z1 or z2) else "mixed"
    if rr.holds != (kind != "mixed"):
        raise IdentityViolation(f"R-property is {rr.holds} but the constant terms are {kind}")
    return DomainReport(rr.ct, rr.ct_reversed, kind, rr.holds)
