"""Linear Diophantine systems, crude generating functions and matrix forms.

A system ``A alpha = b`` over the nonnegative integers is encoded by the
crude generating function

    Lambda^{-b} / prod_i (1 - Lambda^{C_i} x_i)

whose constant term in the slack variables ``Lambda`` is the generating
function of the solutions.  The matrix form keeps the same data as an
augmented matrix with a row of monomials on top, so that Gaussian column (C),
row (R) and deletion (D) operations can be applied symbolically.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm

from .algebra import (
    ElliottRational,
    ElliottTerm,
    OrderKind,
    OrderSpec,
    VariableSpace,
    format_fraction,
)
from .errors import InvalidInput, RankDeficient, UnsupportedOrder, ZeroPivot


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def matrix_rank(rows) -> int:
    """Rank over the rationals."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class LDSystem:
    """``A alpha = b`` with ``A`` an r x n integer matrix."""

    A: tuple
    b: tuple

    def __post_init__(self):
        A = self.A
        if not A or not all(isinstance(row, (tuple, list)) for row in A):
            raise InvalidInput("A must be a nonempty list of rows")
        n = len(A[0])
        if n == 0:
            raise InvalidInput("A must have at least one column")
        for k, row in enumerate(A):
            if len(row) != n:
                raise InvalidInput(f"A row {k + 1} has {len(row)} entries, expected {n}")
            for e in row:
                if not _is_int(e):
                    raise InvalidInput(f"A row {k + 1} holds a non-integer entry {e!r}")
        if len(self.b) != len(A):
            raise InvalidInput(f"b has {len(self.b)} entries, expected {len(A)}")
        for e in self.b:
            if not _is_int(e):
                raise InvalidInput(f"b holds a non-integer entry {e!r}")
        object.__setattr__(self, "A", tuple(tuple(row) for row in A))
        object.__setattr__(self, "b", tuple(self.b))

    @classmethod
    def make(cls, A, b=None) -> LDSystem:
        A = tuple(tuple(row) for row in A)
        return cls(A, tuple(b) if b is not None else (0,) * len(A))

    @property
    def r(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def space(self) -> VariableSpace:
        return VariableSpace(self.r, self.n)

    def column(self, i: int) -> tuple:
        """Column ``i`` (0-based) of ``A``."""
        return tuple(row[i] for row in self.A)

    def rank(self) -> int:
        return matrix_rank(self.A)

    def with_rhs(self, b) -> LDSystem:
        return LDSystem(self.A, tuple(b))

    def is_solution(self, alpha) -> bool:
        return all(sum(a * x for a, x in zip(row, alpha)) == c for row, c in zip(self.A, self.b))

    def to_dict(self) -> dict:
        return {"A": [list(row) for row in self.A], "b": list(self.b)}

    @classmethod
    def from_dict(cls, doc) -> LDSystem:
        if not isinstance(doc, dict):
            raise InvalidInput("system document must be an object with fields 'A' and 'b'")
        if "A" not in doc:
            raise InvalidInput("system document: missing field 'A'")
        A = doc["A"]
        if not isinstance(A, list) or not A or not all(isinstance(row, list) for row in A):
            raise InvalidInput("system document: field 'A' must be a nonempty list of lists")
        b = doc.get("b")
        if b is None:
            b = [0] * len(A)
        if not isinstance(b, list):
            raise InvalidInput("system document: field 'b' must be a list")
        return cls(tuple(tuple(row) for row in A), tuple(b))


def crude_E(sys: LDSystem) -> ElliottRational:
    """``Lambda^{-b} / prod_i (1 - Lambda^{C_i} x_i)``."""
    space = sys.space
    num = space.vector([-c for c in sys.b], [0] * sys.n)
    factors = [(space.vector(sys.column(i), space.unit(space.r + i)[space.r:]), 1) for i in range(sys.n)]
    return ElliottRational(space, (ElliottTerm.make(1, num, factors),))


def crude_Ebar(sys: LDSystem) -> ElliottRational:
    """``Lambda^b prod_i Lambda^{C_i} x_i / prod_i (1 - Lambda^{C_i} x_i)``."""
    space = sys.space
    lam = [c + sum(row) for c, row in zip(sys.b, sys.A)]
    num = space.vector(lam, [1] * sys.n)
    factors = [(space.vector(sys.column(i), space.unit(space.r + i)[space.r:]), 1) for i in range(sys.n)]
    return ElliottRational(space, (ElliottTerm.make(1, num, factors),))


# ---------------------------------------------------------------------------
# matrix forms


def _fvec(v):
    return tuple(Fraction(x) for x in v)


def format_rational_monomial(exps, names=None) -> str:
    """``x1^(1/3)*x2``; ``1`` for the empty product."""
    parts = []
    for k, e in enumerate(exps):
        if not e:
            continue
        name = names[k] if names else f"x{k + 1}"
        if e == 1:
            parts.append(name)
        elif Fraction(e).denominator == 1:
            parts.append(f"{name}^{e}")
        else:
            parts.append(f"{name}^({format_fraction(e)})")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MatrixForm:
    """``scalar * y_{n+1} Lambda^{-b} / prod_i (1 - Lambda^{C_i} y_i)`` as an augmented matrix.

    ``top`` holds the x-exponent vectors (exact rationals) of ``y_1..y_n`` and
    ``top_rhs`` that of ``y_{n+1}``; ``body`` has one row per remaining lambda
    (labels in ``rows``) and ``rhs`` is the augmented column.  ``columns`` maps
    current columns to 1-based original column numbers.  ``pivots`` collects
    the pivot values used by the operations applied so far.
    """

    top: tuple
    top_rhs: tuple
    body: tuple
    rhs: tuple
    columns: tuple
    rows: tuple
    scalar: Fraction = Fraction(1)
    pivots: tuple = field(default=())

    @classmethod
    def from_system(cls, sys: LDSystem) -> MatrixForm:
        n = sys.n
        top = tuple(tuple(Fraction(int(j == i)) for j in range(n)) for i in range(n))
        return cls(
            top=top,
            top_rhs=(Fraction(0),) * n,
            body=tuple(_fvec(row) for row in sys.A),
            rhs=_fvec(sys.b),
            columns=tuple(range(1, n + 1)),
            rows=tuple(range(1, sys.r + 1)),
        )

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def height(self) -> int:
        return len(self.rows)

    def position(self, i: int) -> int:
        """Current position of original column ``i`` (1-based)."""
        try:
            return self.columns.index(i)
        except ValueError:
            raise InvalidInput(f"column {i} is not present in the matrix form") from None

    def entry(self, row: int, i: int) -> Fraction:
        return self.body[row][self.position(i)]

    def row_equation(self, row: int = 0) -> tuple:
        """``(coefficients, rhs)`` of one body row."""
        return self.body[row], self.rhs[row]

    def rank(self) -> int:
        return matrix_rank(self.body) if self.body else 0

    def to_rational(self) -> ElliottRational:
        """The rational function represented, when all exponents are integers."""
        n0 = len(self.top_rhs)
        r0 = max(self.rows) if self.rows else 0
        space = VariableSpace(r0, n0)

        def integral(v):
            if any(Fraction(e).denominator != 1 for e in v):
                raise InvalidInput("matrix form has fractional exponents")
            return tuple(int(e) for e in v)

        lam = [0] * r0
        for k, label in enumerate(self.rows):
            lam[label - 1] = -self.rhs[k]
        num = space.vector(integral(lam), integral(self.top_rhs))
        factors = []
        for j in range(self.width):
            col = [0] * r0
            for k, label in enumerate(self.rows):
                col[label - 1] = self.body[k][j]
            factors.append((space.vector(integral(col), integral(self.top[j])), 1))
        return ElliottRational(space, (ElliottTerm.make(self.scalar, num, factors),))

    # the three elementary operations -----------------------------------

    def _pivot(self, row: int, i: int, step=None):
        if row >= self.height:
            raise ZeroPivot(f"no body row {row + 1} left to pivot on", step)
        j = self.position(i)
        a = self.body[row][j]
        if a == 0:
            raise ZeroPivot(f"pivot in row {row + 1}, column {i} is zero", step)
        return j, a

    def col_eliminate(self, i: int, row: int = 0, skip=(), step=None) -> MatrixForm:
        """Clear ``row`` outside column ``i`` by column operations.

        Column ``j`` receives ``-a_{row,j}/a_{row,i}`` times column ``i``; on the
        top row this multiplies ``y_j`` by that power of ``y_i``.  The augmented
        column is treated as one more column.  Columns in ``skip`` (original
        numbers) are left alone.
        """
        p, a = self._pivot(row, i, step)
        piv_col = [r[p] for r in self.body]
        y = self.top[p]
        body = [list(r) for r in self.body]
        top = list(self.top)
        for j in range(self.width):
            if j == p or self.columns[j] in skip:
                continue
            f = -self.body[row][j] / a
            if f:
                for k in range(self.height):
                    body[k][j] += f * piv_col[k]
                top[j] = tuple(u + f * v for u, v in zip(top[j], y))
        f = -self.rhs[row] / a
        rhs = tuple(c + f * v for c, v in zip(self.rhs, piv_col))
        top_rhs = tuple(u + f * v for u, v in zip(self.top_rhs, y))
        return replace(
            self,
            top=tuple(top),
            top_rhs=top_rhs,
            body=tuple(tuple(r) for r in body),
            rhs=rhs,
            pivots=self.pivots + (a,),
        )

    def row_eliminate(self, i: int, row: int = 0, step=None) -> MatrixForm:
        """Clear column ``i`` below ``row`` by row operations."""
        p, a = self._pivot(row, i, step)
        pr = self.body[row]
        body = list(self.body)
        rhs = list(self.rhs)
        for k in range(row + 1, self.height):
            f = body[k][p] / a
            if f:
                body[k] = tuple(u - f * v for u, v in zip(body[k], pr))
                rhs[k] -= f * self.rhs[row]
        return replace(self, body=tuple(body), rhs=tuple(rhs), pivots=self.pivots + (a,))

    def delete(self, i: int, row: int = 0) -> MatrixForm:
        """Remove body row ``row`` and column ``i``."""
        p = self.position(i)
        keep = [j for j in range(self.width) if j != p]
        body = tuple(
            tuple(r[j] for j in keep) for k, r in enumerate(self.body) if k != row
        )
        return replace(
            self,
            top=tuple(self.top[j] for j in keep),
            body=body,
            rhs=tuple(c for k, c in enumerate(self.rhs) if k != row),
            columns=tuple(self.columns[j] for j in keep),
            rows=tuple(lbl for k, lbl in enumerate(self.rows) if k != row),
        )

    # rendering -------------------------------------------------------

    def render(self, rhs_labels=None) -> str:
        """Bracket layout: monomial row, then one row per lambda, rhs after ``|``."""
        cells = [[format_rational_monomial(y) for y in self.top] + [format_rational_monomial(self.top_rhs)]]
        for k, row in enumerate(self.body):
            rhs = rhs_labels[k] if rhs_labels else format_fraction(self.rhs[k])
            cells.append([format_fraction(e) for e in row] + [rhs])
        widths = [max(len(c[j]) for c in cells) for j in range(self.width + 1)]
        lines = []
        for c in cells:
            left = "  ".join(s.rjust(w) for s, w in zip(c[:-1], widths))
            lines.append(f"[ {left} | {c[-1].rjust(widths[-1])} ]")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": list(self.rows),
            "top": [[format_fraction(e) for e in y] for y in self.top],
            "top_rhs": [format_fraction(e) for e in self.top_rhs],
            "body": [[format_fraction(e) for e in row] for row in self.body],
            "rhs": [format_fraction(e) for e in self.rhs],
            "scalar": format_fraction(self.scalar),
        }


def col_eliminate(T: MatrixForm, i: int) -> MatrixForm:
    return T.col_eliminate(i)


def row_eliminate(T: MatrixForm, i: int) -> MatrixForm:
    return T.row_eliminate(i)


def delete(T: MatrixForm, i: int) -> MatrixForm:
    return T.delete(i)


_KINDS = {"R", "C", "RC", "CR", "D", "CD", "RD", "CRD", "RCD"}


def sequence_ops(T: MatrixForm, kind: str, indices) -> MatrixForm:
    """Apply ``T <- kind<i_1, ..., i_p>``.

    Step ``s`` pivots on column ``i_s``.  Without deletion the pivot row is the
    ``s``-th body row and earlier pivot columns are never touched again; with
    deletion the pivot row is always the first remaining one.  A zero pivot
    raises :class:`ZeroPivot` carrying the 1-based step number.
    """
    kind = kind.upper()
    if kind not in _KINDS:
        raise InvalidInput(f"unknown operation sequence {kind!r}")
    deleting = kind.endswith("D")
    letters = kind[:-1] if deleting else kind
    done = []
    for step, i in enumerate(indices, start=1):
        if i in done:
            raise InvalidInput(f"column {i} repeated in the operation sequence")
        row = 0 if deleting else step - 1
        _, a = T._pivot(row, i, step)
        pivots = T.pivots + (a,)
        for op in letters:
            if op == "R":
                T = T.row_eliminate(i, row, step)
            else:
                T = T.col_eliminate(i, row, skip=done, step=step)
        T = replace(T, pivots=pivots)
        if deleting:
            T = T.delete(i)
        done.append(i)
    return T


def pivot_values(T: MatrixForm, indices) -> tuple:
    """The pivots ``a'_{s,i_s}`` met by ``T <- R<indices>``."""
    return sequence_ops(T, "R", indices).pivots[len(T.pivots):]


# ---------------------------------------------------------------------------
# contribution sequences


@dataclass(frozen=True)
class ContributionSequence:
    indices: tuple
    pivots: tuple

    def __len__(self):
        return len(self.indices)


def _contribution_supported(order: OrderSpec):
    if order.kind not in (OrderKind.CASE1, OrderKind.CASE2):
        raise UnsupportedOrder(
            "contribution sequences need the identity order or the total-degree order"
        )


def contributes(y, a, lam: int, r: int, order: OrderSpec) -> bool:
    """Whether ``y^{sign(-a)}`` precedes ``lambda_lam`` (1-based) under ``order``."""
    sigma = -1 if a > 0 else 1
    v = [Fraction(0)] * r + [sigma * e for e in y]
    v[lam - 1] -= 1
    return order.sign(v) < 0


def contribution_sequences(T: MatrixForm, order: OrderSpec, max_len: int, trace=None) -> list:
    """All contribution sequences of length at most ``max_len``, depth first.

    Columns whose pivot vanishes are skipped (reported through ``trace``).
    """
    _contribution_supported(order)
    r = max(T.rows) if T.rows else 0
    out = []

    def walk(S: MatrixForm, prefix, pivots):
        out.append(ContributionSequence(tuple(prefix), tuple(pivots)))
        if len(prefix) >= max_len or not S.rows:
            return
        lam = S.rows[0]
        for j, i in enumerate(S.columns):
            a = S.body[0][j]
            if a == 0:
                if trace is not None:
                    trace({"event": "zero-pivot", "prefix": list(prefix), "column": i})
                continue
            if contributes(S.top[j], a, lam, r, order):
                walk(sequence_ops(S, "CD", [i]), prefix + [i], pivots + [a])

    walk(T, [], [])
    return out


def require_full_rank(T: MatrixForm):
    if T.rank() < T.height:
        raise RankDeficient(f"matrix has rank {T.rank()} < {T.height}")


def reduced_rows(T: MatrixForm, order: OrderSpec, trace=None) -> list:
    """``(sequence, coefficients, rhs, columns)`` for every contribution sequence of length < r.

    The row is the first body row of ``T <- RD<sequence>``, cleared of
    denominators by the positive lcm of all of them.
    """
    require_full_rank(T)
    seqs = contribution_sequences(T, order, T.height - 1, trace=trace)
    rows = []
    for seq in seqs:
        S = sequence_ops(T, "RD", seq.indices)
        coeffs, rhs = S.row_equation(0)
        scale = 1
        for q in list(coeffs) + [rhs]:
            scale = lcm(scale, Fraction(q).denominator)
        rows.append(
            (
                seq,
                tuple(int(c * scale) for c in coeffs),
                int(rhs * scale),
                S.columns,
            )
        )
    return rows


def format_equation(coeffs, rhs, columns, var="a") -> str:
    """``3a1 - a2 - 2a3 = b`` style text with original column numbers."""
    parts = []
    for c, col in zip(coeffs, columns):
        if not c:
            continue
        mag = abs(c)
        body = f"{'' if mag == 1 else mag}{var}{col}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return f"{' '.join(parts) if parts else '0'} = {rhs}"
