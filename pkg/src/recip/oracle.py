"""Brute-force ground truth for solution sets and positive feasibility."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import InvalidInput
from .ldsystem import LDSystem

NONNEG = "nonneg"
STRICT = "strict"


@dataclass(frozen=True)
class SolutionSet:
    solutions: tuple
    bound: int
    positivity: str = NONNEG

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def to_list(self) -> list:
        return [list(a) for a in self.solutions]


def enumerate_solutions(sys: LDSystem, D: int, positivity: str = NONNEG) -> SolutionSet:
    """Every solution with ``sum(alpha) <= D`` (and ``alpha >= 1`` when strict)."""
    if D < 0:
        raise InvalidInput("truncation degree must be nonnegative")
    if positivity not in (NONNEG, STRICT):
        raise InvalidInput(f"unknown positivity {positivity!r}")
    lo = 1 if positivity == STRICT else 0
    A, b, n = sys.A, sys.b, sys.n
    # for the tail starting at column j: sum of a_kj over it, and its min/max entry
    tail_sum = [[sum(row[j:]) for j in range(n + 1)] for row in A]
    tail_min = [[min(row[j:], default=0) for j in range(n + 1)] for row in A]
    tail_max = [[max(row[j:], default=0) for j in range(n + 1)] for row in A]
    found = []
    alpha = [0] * n

    def reachable(j, partial, room):
        # coordinates j.. are lo + extra with sum(extra) <= room
        for k in range(len(A)):
            base = partial[k] + lo * tail_sum[k][j]
            hi = base + room * max(0, tail_max[k][j])
            low = base + room * min(0, tail_min[k][j])
            if not low <= b[k] <= hi:
                return False
        return True

    def walk(j, partial, room):
        if j == n:
            if list(partial) == list(b):
                found.append(tuple(alpha))
            return
        if not reachable(j, partial, room):
            return
        for extra in range(room + 1):
            v = lo + extra
            alpha[j] = v
            walk(j + 1, [p + row[j] * v for p, row in zip(partial, A)], room - extra)
        alpha[j] = 0

    room = D - lo * n
    if room >= 0:
        walk(0, [0] * len(A), room)
    return SolutionSet(tuple(sorted(found)), D, positivity)


def indicator_series(S: SolutionSet, r: int = 0) -> dict:
    """``{exponent vector: 1}``; ``r`` zero lambda slots are prepended to each key."""
    pad = (0,) * r
    return {pad + tuple(a): 1 for a in S.solutions}


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility of A alpha = 0, alpha >= 1


def _eliminate_equalities(A, n):
    """Solve the equalities for some variables.

    Returns ``(free, expr)`` where ``expr[i]`` maps variable ``i`` to an affine
    form ``(coeffs over free variables, const)`` (const is always 0 here).
    """
    rows = [[Fraction(x) for x in row] for row in A]
    pivots = {}
    rank = 0
    for col in range(n):
        p = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        pr = rows[rank]
        pr[:] = [x / pr[col] for x in pr]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * c for a, c in zip(rows[i], pr)]
        pivots[col] = rank
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    expr = {}
    for c in range(n):
        if c in pivots:
            row = rows[pivots[c]]
            expr[c] = {f: -row[f] for f in free if row[f]}
        else:
            expr[c] = {c: Fraction(1)}
    return free, expr


def _fm_feasible(ineqs, nvars):
    """Fourier-Motzkin on ``sum coef * y >= const``; returns a witness or None.

    ``ineqs`` is a list of ``(coeffs list, const)``.
    """
    if nvars == 0:
        return [] if all(const <= 0 for _, const in ineqs) else None
    k = nvars - 1
    pos, neg, rest = [], [], []
    for coeffs, const in ineqs:
        c = coeffs[k]
        (pos if c > 0 else neg if c < 0 else rest).append((coeffs, const))
    projected = [(coeffs[:k], const) for coeffs, const in rest]
    for cp, kp in pos:
        for cn, kn in neg:
            a, b = cp[k], -cn[k]
            projected.append(
                ([b * x + a * y for x, y in zip(cp[:k], cn[:k])], b * kp + a * kn)
            )
    projected = _dedupe(projected)
    sol = _fm_feasible(projected, k)
    if sol is None:
        return None
    # back-substitute: y_k within [max lower, min upper]
    lower, upper = None, None
    for coeffs, const in pos:
        v = (const - sum(c * s for c, s in zip(coeffs[:k], sol))) / coeffs[k]
        lower = v if lower is None else max(lower, v)
    for coeffs, const in neg:
        v = (const - sum(c * s for c, s in zip(coeffs[:k], sol))) / coeffs[k]
        upper = v if upper is None else min(upper, v)
    if lower is None and upper is None:
        value = Fraction(0)
    elif lower is None:
        value = upper
    elif upper is None:
        value = lower
    else:
        value = lower
    return sol + [value]


def _dedupe(ineqs):
    seen = set()
    out = []
    for coeffs, const in ineqs:
        if not any(coeffs):
            if const > 0:
                return [([Fraction(0)] * len(coeffs), Fraction(1))]
            continue
        scale = max(abs(c) for c in coeffs)
        key = (tuple(c / scale for c in coeffs), const / scale)
        if key not in seen:
            seen.add(key)
            out.append((list(key[0]), key[1]))
    return out


def positive_solution(A) -> tuple | None:
    """An integer ``alpha >= 1`` with ``A alpha = 0``, or None."""
    A = [list(row) for row in A]
    if not A or not A[0]:
        raise InvalidInput("matrix must be nonempty")
    n = len(A[0])
    free, expr = _eliminate_equalities(A, n)
    # alpha_i = sum_f expr[i][f] y_f >= 1
    ineqs = [([expr[i].get(f, Fraction(0)) for f in free], Fraction(1)) for i in range(n)]
    y = _fm_feasible(_dedupe(ineqs), len(free))
    if y is None:
        return None
    alpha = [sum(expr[i].get(f, 0) * v for f, v in zip(free, y)) for i in range(n)]
    scale = 1
    for a in alpha:
        scale = lcm(scale, Fraction(a).denominator)
    witness = tuple(int(a * scale) for a in alpha)
    assert all(w >= 1 for w in witness)
    assert all(sum(a * w for a, w in zip(row, witness)) == 0 for row in A)
    return witness


def has_positive_solution(A) -> bool:
    return positive_solution(A) is not None
