"""Built-in consistency checks run by ``recip selfcheck``."""
from __future__ import annotations

import random
from fractions import Fraction

from .algebra import ElliottRational, OrderSpec, VariableSpace, equals, series_truncate
from .ctengine import ct_all, ct_lambda, hadamard_product, i_operator
from .ldsystem import LDSystem, MatrixForm, contribution_sequences, crude_E, reduced_rows, sequence_ops
from .oracle import enumerate_solutions, has_positive_solution, indicator_series
from .parsing import parse_rational
from .reciprocity import (
    error_terms,
    homogeneous_reciprocity,
    i_property,
    monster_check,
    r_property,
    single_equation_r_property,
)

EXAMPLE_A = ((3, -1, -2), (-1, 1, -1))
SWAPPED_A = ((1, -1, 1), (3, -1, -2))


def _matrices():
    F = Fraction
    for b, c in ((0, 0), (3, -1), (-6, 2)):
        T = MatrixForm.from_system(LDSystem(EXAMPLE_A, (b, c)))
        C = sequence_ops(T, "C", [1])
        if C.body != ((3, 0, 0), (-1, F(2, 3), F(-5, 3))) or C.rhs != (0, c + F(b, 3)):
            return False, f"C<1> at {(b, c)}"
        if C.top_rhs != (F(-b, 3), 0, 0) or C.top[1] != (F(1, 3), 1, 0) or C.top[2] != (F(2, 3), 0, 1):
            return False, f"C<1> top row at {(b, c)}"
        R = sequence_ops(T, "R", [1])
        if R.body != ((3, -1, -2), (0, F(2, 3), F(-5, 3))) or R.rhs != (b, c + F(b, 3)):
            return False, f"R<1> at {(b, c)}"
        D = sequence_ops(T, "CD", [1])
        if D.body != ((F(2, 3), F(-5, 3)),) or D.columns != (2, 3):
            return False, f"CD<1> at {(b, c)}"
    return True, "three right-hand sides"


def _sequences():
    o = OrderSpec.case1()
    T = MatrixForm.from_system(LDSystem(EXAMPLE_A, (0, 0)))
    got = [s.indices for s in contribution_sequences(T, o, 2)]
    S = MatrixForm.from_system(LDSystem(SWAPPED_A, (0, 0)))
    got2 = [s.indices for s in contribution_sequences(S, o, 1) if len(s) == 1]
    ok = got == [(), (1,), (1, 2)] and got2 == [(1,), (3,)]
    return ok, f"{got} / {got2}"


def _equations():
    o = OrderSpec.case1()
    rows = reduced_rows(MatrixForm.from_system(LDSystem(EXAMPLE_A, (5, 7))), o)
    got = [(c, rhs) for _, c, rhs, _ in rows]
    return got == [((3, -1, -2), 5), ((2, -5), 26)], str(got)


def _oracle(seed):
    o = OrderSpec.case1()
    rng = random.Random(seed)
    systems = [LDSystem(EXAMPLE_A, b) for b in ((0, 0), (1, 0), (-1, 0), (0, 1))]
    for _ in range(5):
        A = tuple(tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(2))
        systems.append(LDSystem(A, tuple(rng.randint(-4, 4) for _ in range(2))))
    for s in systems:
        E = ct_all(crude_E(s), o)
        if series_truncate(E, 8) != indicator_series(enumerate_solutions(s, 8), s.r):
            return False, f"A={s.A} b={s.b}"
    return True, f"{len(systems)} systems"


def _ct_invariant(seed):
    rng = random.Random(seed)
    o = OrderSpec.case1()
    space = VariableSpace(1, 2)
    for _ in range(20):
        factors = []
        for _ in range(rng.randint(1, 3)):
            m = (0, 0, 0)
            while not any(m):
                m = (rng.randint(-3, 3), rng.randint(-2, 2), rng.randint(-2, 2))
            factors.append((m, rng.randint(1, 2)))
        F = ElliottRational.term(space, 1, (rng.randint(-3, 3), 0, 0), factors)
        if not equals(ct_lambda(F, 0, o) + ct_lambda(F, 0, o.reverse()), i_operator(F, 0)):
            return False, str(F)
    return True, "20 random functions"


def _error_terms():
    o = OrderSpec.case1()
    for bc in ((0, 0), (3, 0), (-6, 2)):
        error_terms(crude_E(LDSystem(EXAMPLE_A, bc)), o)
    return True, "identity verified at 3 points"


def _homogeneous():
    for A in (((1, -1),), ((1, 1, -1, -1),), EXAMPLE_A):
        if not homogeneous_reciprocity(A).holds:
            return False, str(A)
    return True, "3 matrices"


def _criterion():
    got = [b for b in range(-10, 11) if single_equation_r_property((3, -1, -2), b)]
    return got == [-2, -1, 0, 1, 2], str(got)


def _grid():
    o = OrderSpec.case1()
    R, I, M = set(), set(), set()
    for b in range(-12, 13):
        for c in range(-12, 13):
            s = LDSystem(EXAMPLE_A, (b, c))
            F = crude_E(s)
            if r_property(F, o).holds:
                R.add((b, c))
            if i_property(F, o).holds:
                I.add((b, c))
            if monster_check(MatrixForm.from_system(s), o).holds:
                M.add((b, c))
    return I < R and M <= R, f"R={len(R)} I={len(I)} monster={len(M)}"


def _hadamard():
    x = ("x",)
    h = hadamard_product(parse_rational("1/(1-x)^2", x), parse_rational("1/(1-x)^2", x))
    return equals(h, parse_rational("(1+x)/(1-x)^3", x)), str(h.collect())


def _feasible():
    ok = has_positive_solution(EXAMPLE_A) and not has_positive_solution(((1, 1),))
    return ok, "positive-solution feasibility"


def run_selfcheck(seed: int = 1729) -> list:
    """``[(name, passed, detail)]``; exceptions count as failures."""
    checks = [
        ("matrix operations", _matrices),
        ("contribution sequences", _sequences),
        ("reduced equations", _equations),
        ("oracle agreement", lambda: _oracle(seed)),
        ("constant-term invariant", lambda: _ct_invariant(seed)),
        ("error terms", _error_terms),
        ("homogeneous reciprocity", _homogeneous),
        ("single-equation criterion", _criterion),
        ("grid containment", _grid),
        ("hadamard product", _hadamard),
        ("positive feasibility", _feasible),
    ]
    out = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # reported, not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
