"""Exact Laurent monomials, Elliott-rational functions and monomial orders.

An Elliott-rational function is stored as a sum of terms

    coef * m0 / prod_j (1 - m_j)^mult_j

where ``m0`` and the ``m_j`` are Laurent monomials given by integer exponent
vectors over ``l1..lr, x1..xn`` (lambda variables first).  No GCD
simplification is ever attempted; equality of two functions is decided by
clearing denominators and comparing the resulting Laurent polynomials.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable, Iterable, Sequence

from .errors import (
    InvalidFactor,
    InvalidInput,
    NotPowerSeriesExpandable,
    SingularOrder,
)

Exponents = tuple  # tuple[int, ...]; Fractions allowed only in MatrixForm rows


# ---------------------------------------------------------------------------
# vectors


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(k, a):
    return tuple(k * x for x in a)


def is_zero_vector(a) -> bool:
    return not any(a)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_fraction(q) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class VariableSpace:
    """``r`` lambda variables followed by ``n`` x variables."""

    r: int
    n: int
    names: tuple | None = None

    def __post_init__(self):
        if self.r < 0 or self.n < 1:
            raise InvalidInput(f"invalid variable space r={self.r}, n={self.n}")
        if self.names is not None and len(self.names) != self.r + self.n:
            raise InvalidInput("names must list every variable")

    @property
    def dim(self) -> int:
        return self.r + self.n

    def variable_names(self) -> tuple:
        if self.names is not None:
            return self.names
        return tuple(f"l{i + 1}" for i in range(self.r)) + tuple(
            f"x{i + 1}" for i in range(self.n)
        )

    def same_shape(self, other: VariableSpace) -> bool:
        return self.r == other.r and self.n == other.n

    def zero(self) -> tuple:
        return (0,) * self.dim

    def unit(self, index: int) -> tuple:
        v = [0] * self.dim
        v[index] = 1
        return tuple(v)

    def lam(self, i: int) -> tuple:
        """Exponent vector of lambda_i (1-based, as in the displays)."""
        return self.unit(i - 1)

    def x(self, i: int) -> tuple:
        return self.unit(self.r + i - 1)

    def vector(self, lams=(), xs=()) -> tuple:
        lams = tuple(lams) + (0,) * (self.r - len(lams))
        xs = tuple(xs) + (0,) * (self.n - len(xs))
        if len(lams) != self.r or len(xs) != self.n:
            raise InvalidInput("too many exponents for the variable space")
        return lams + xs

    def x_part(self, v) -> tuple:
        return tuple(v[self.r:])

    def lam_part(self, v) -> tuple:
        return tuple(v[: self.r])

    def x_degree(self, v):
        return sum(v[self.r:])

    def check(self, v):
        if len(v) != self.dim:
            raise InvalidInput(f"exponent vector {v!r} has length {len(v)}, expected {self.dim}")
        return v


def format_monomial(v, space: VariableSpace | None = None) -> str:
    names = space.variable_names() if space is not None else tuple(f"v{i}" for i in range(len(v)))
    parts = []
    for name, e in zip(names, v):
        if e == 0:
            continue
        if e == 1:
            parts.append(name)
        else:
            e = as_fraction(e)
            text = format_fraction(e)
            parts.append(f"{name}^{text}" if e.denominator == 1 else f"{name}^({text})")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# monomial orders


class OrderKind(str, Enum):
    CASE1 = "case1-identity"
    CASE2 = "case2-total-degree"
    MATRIX = "matrix"
    LAMBDA_ADIC = "lambda-adic"


def _last_nonzero_sign(v) -> int:
    for e in reversed(v):
        if e > 0:
            return 1
        if e < 0:
            return -1
    return 0


def _det(rows) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((i for i in range(col, size) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, size):
            f = m[i][col] / m[col][col]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


@dataclass(frozen=True)
class OrderSpec:
    """A total order on exponent vectors compatible with addition.

    ``sign(v)`` is +1 when the monomial is larger than 1, -1 when smaller and 0
    only for the zero vector (or, for the lambda-adic preorder, when the chosen
    lambda exponent vanishes).

    case1
        iterated Laurent series: the last nonzero coordinate decides, so
        ``x_n`` dominates ... ``x_1`` dominates ``l_r`` ... ``l_1``.
    case2
        ``x_i -> x_i t``, ``l_i -> l_{r-i+1}`` into the iterated field on
        ``(x, Lambda, t)``: total x-degree first, then ``l_1, l_2, ...``,
        then ``x_n, ..., x_1``.
    matrix
        apply the nonsingular integer matrix to the vector, then case1.
    lambda-adic
        only the sign of one lambda exponent matters (at zero: positive
        exponent means larger than 1; at infinity the opposite).
    """

    kind: OrderKind = OrderKind.CASE1
    reversed: bool = False
    r: int = 0
    matrix: tuple | None = None
    lam: int | None = None
    at_infinity: bool = False

    @classmethod
    def case1(cls, reversed=False) -> OrderSpec:
        return cls(OrderKind.CASE1, reversed)

    @classmethod
    def case2(cls, r: int, reversed=False) -> OrderSpec:
        return cls(OrderKind.CASE2, reversed, r=r)

    @classmethod
    def from_matrix(cls, rows, reversed=False) -> OrderSpec:
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise SingularOrder("order matrix must be square")
        if _det(rows) == 0:
            raise SingularOrder("order matrix is singular")
        return cls(OrderKind.MATRIX, reversed, matrix=rows)

    @classmethod
    def lambda_adic(cls, lam: int, at_infinity=False) -> OrderSpec:
        return cls(OrderKind.LAMBDA_ADIC, lam=lam, at_infinity=at_infinity)

    @classmethod
    def parse(cls, name: str, r: int = 0, reversed=False) -> OrderSpec:
        if name in ("case1", OrderKind.CASE1.value):
            return cls.case1(reversed)
        if name in ("case2", OrderKind.CASE2.value):
            return cls.case2(r, reversed)
        raise InvalidInput(f"unknown order {name!r}")

    @property
    def is_total(self) -> bool:
        return self.kind is not OrderKind.LAMBDA_ADIC

    def reverse(self) -> OrderSpec:
        return replace(self, reversed=not self.reversed)

    def _raw_sign(self, v) -> int:
        kind = self.kind
        if kind is OrderKind.CASE1:
            return _last_nonzero_sign(v)
        if kind is OrderKind.LAMBDA_ADIC:
            e = v[self.lam]
            s = (e > 0) - (e < 0)
            return -s if self.at_infinity else s
        if kind is OrderKind.CASE2:
            r = self.r
            t = sum(v[r:])
            if t:
                return 1 if t > 0 else -1
            for e in v[:r]:
                if e:
                    return 1 if e > 0 else -1
            return _last_nonzero_sign(v[r:])
        if len(v) != len(self.matrix):
            raise InvalidInput("vector length does not match the order matrix")
        image = [sum(a * b for a, b in zip(row, v)) for row in self.matrix]
        return _last_nonzero_sign(image)

    def sign(self, v) -> int:
        s = self._raw_sign(v)
        return -s if self.reversed else s

    def compare(self, a, b) -> int:
        """-1 if ``a`` precedes ``b``, 0 if equal, +1 otherwise."""
        if len(a) != len(b):
            raise InvalidInput("cannot compare vectors of different lengths")
        return -self.sign(vsub(b, a))

    def describe(self) -> str:
        base = self.kind.value
        if self.kind is OrderKind.LAMBDA_ADIC:
            base += f"(l{self.lam + 1}, {'infinity' if self.at_infinity else 'zero'})"
        return base + (" reversed" if self.reversed else "")


CANONICAL_ORDER = OrderSpec.case1()


class FactorClass(str, Enum):
    PT = "PT"
    NT = "NT"
    LAMBDA_FREE = "lambda-free"


def classify_factor(mono, lam: int, order: OrderSpec) -> FactorClass:
    """Classify ``1/(1 - mono)`` as PT, NT or free of ``lambda`` (coordinate ``lam``)."""
    if is_zero_vector(mono):
        raise InvalidFactor("factor 1 - 1 vanishes")
    a = mono[lam]
    if a == 0:
        return FactorClass.LAMBDA_FREE
    s = order.sign(mono)
    if s == 0:
        raise InvalidFactor(f"factor monomial {mono!r} is not comparable with 1")
    if s * a > 0:
        return FactorClass.PT
    return FactorClass.NT


# ---------------------------------------------------------------------------
# terms


def _merge_factors(factors) -> tuple:
    merged: dict = {}
    for item in factors:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], tuple):
            mono, mult = item
        else:
            mono, mult = tuple(item), 1
        if mult < 0:
            raise InvalidFactor("negative multiplicity")
        if mult == 0:
            continue
        if is_zero_vector(mono):
            raise InvalidFactor("factor 1 - 1 vanishes")
        merged[mono] = merged.get(mono, 0) + mult
    return tuple(sorted(merged.items()))


@dataclass(frozen=True)
class ElliottTerm:
    """``coef * m(num) / prod (1 - m(mono))^mult``; ``den`` is sorted and merged."""

    coef: Fraction
    num: tuple
    den: tuple = ()

    @classmethod
    def make(cls, coef, num, factors=()) -> ElliottTerm:
        return cls(as_fraction(coef), tuple(num), _merge_factors(factors))

    @property
    def key(self) -> tuple:
        return (self.num, self.den)

    def with_coef(self, coef) -> ElliottTerm:
        return ElliottTerm(coef, self.num, self.den)

    def factor_count(self) -> int:
        return sum(mult for _, mult in self.den)


def orient_term(t: ElliottTerm, order: OrderSpec) -> ElliottTerm:
    """Rewrite every factor so that its monomial is larger than 1.

    ``1/(1-m) = -m^-1 / (1 - m^-1)``; factors comparing equal to 1 under a
    lambda-adic preorder are left alone.
    """
    if all(order.sign(m) >= 0 for m, _ in t.den):
        return t
    coef = t.coef
    num = t.num
    factors = []
    for m, mult in t.den:
        if order.sign(m) < 0:
            if mult % 2:
                coef = -coef
            num = vsub(num, vscale(mult, m))
            factors.append((vneg(m), mult))
        else:
            factors.append((m, mult))
    return ElliottTerm(coef, num, _merge_factors(factors))


# ---------------------------------------------------------------------------
# Laurent polynomials (dict: exponent tuple -> coefficient)


def poly_add_into(acc: dict, poly: dict, scale=1):
    for m, c in poly.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def poly_times_binomial(poly: dict, m) -> dict:
    """``poly * (1 - m)``."""
    out = dict(poly)
    for e, c in poly.items():
        k = vadd(e, m)
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True, eq=False)
class ElliottRational:
    """A formal sum of :class:`ElliottTerm`; addition never cancels implicitly."""

    space: VariableSpace
    terms: tuple = ()

    # construction -----------------------------------------------------------

    @classmethod
    def zero(cls, space) -> ElliottRational:
        return cls(space, ())

    @classmethod
    def constant(cls, space, c) -> ElliottRational:
        c = as_fraction(c)
        return cls(space, (ElliottTerm(c, space.zero()),) if c else ())

    @classmethod
    def monomial(cls, space, num, coef=1) -> ElliottRational:
        return cls(space, (ElliottTerm.make(coef, space.check(tuple(num))),))

    @classmethod
    def term(cls, space, coef, num, factors=()) -> ElliottRational:
        t = ElliottTerm.make(coef, space.check(tuple(num)), factors)
        for m, _ in t.den:
            space.check(m)
        return cls(space, (t,))

    @classmethod
    def geometric(cls, space, mono, mult=1) -> ElliottRational:
        """``1 / (1 - m)^mult``."""
        return cls.term(space, 1, space.zero(), [(tuple(mono), mult)])

    # arithmetic ------------------------------------------------------------

    def _check_space(self, other: ElliottRational):
        if not self.space.same_shape(other.space):
            raise InvalidInput("rational functions live in different variable spaces")

    def __add__(self, other):
        if not isinstance(other, ElliottRational):
            other = ElliottRational.constant(self.space, other)
        self._check_space(other)
        return ElliottRational(self.space, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ElliottRational(self.space, tuple(t.with_coef(-t.coef) for t in self.terms))

    def __sub__(self, other):
        if not isinstance(other, ElliottRational):
            other = ElliottRational.constant(self.space, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ElliottRational):
            c = as_fraction(other)
            if c == 0:
                return ElliottRational.zero(self.space)
            return ElliottRational(self.space, tuple(t.with_coef(c * t.coef) for t in self.terms))
        self._check_space(other)
        out = []
        for s in self.terms:
            for t in other.terms:
                out.append(
                    ElliottTerm(
                        s.coef * t.coef,
                        vadd(s.num, t.num),
                        _merge_factors(s.den + t.den),
                    )
                )
        return ElliottRational(self.space, tuple(out))

    __rmul__ = __mul__

    def collect(self) -> ElliottRational:
        """Merge terms with identical numerator and denominator; drop zeros."""
        acc: dict = {}
        for t in self.terms:
            acc[t.key] = acc.get(t.key, 0) + t.coef
        terms = tuple(
            ElliottTerm(Fraction(c), num, den)
            for (num, den), c in sorted(acc.items())
            if c
        )
        return ElliottRational(self.space, terms)

    # queries ---------------------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def is_zero(self) -> bool:
        return is_zero(self)

    def equals(self, other) -> bool:
        return equals(self, other)

    def depends_on(self, index: int) -> bool:
        return any(t.num[index] for t in self.terms) or any(
            m[index] for t in self.terms for m, _ in t.den
        )

    def is_lambda_free(self) -> bool:
        return not any(self.depends_on(i) for i in range(self.space.r))

    def max_factor_count(self) -> int:
        return max((t.factor_count() for t in self.terms), default=0)

    # conversions -----------------------------------------------------------

    def map_exponents(self, fn: Callable, space: VariableSpace | None = None) -> ElliottRational:
        space = space or self.space
        terms = []
        for t in self.terms:
            num = space.check(tuple(fn(t.num)))
            factors = []
            for m, mult in t.den:
                image = space.check(tuple(fn(m)))
                if is_zero_vector(image):
                    raise InvalidFactor("substitution maps a factor monomial to 1")
                factors.append((image, mult))
            terms.append(ElliottTerm(t.coef, num, _merge_factors(factors)))
        return ElliottRational(space, tuple(terms))

    def substitute_inverse(self, xs: Iterable[int] | None = None) -> ElliottRational:
        return substitute_inverse(self, xs)

    def drop_lambdas(self) -> ElliottRational:
        """Re-home a lambda-free function in the x-only space."""
        if not self.is_lambda_free():
            raise InvalidInput("function still depends on lambda variables")
        r = self.space.r
        names = self.space.names[r:] if self.space.names else None
        return self.map_exponents(lambda v: v[r:], VariableSpace(0, self.space.n, names))

    def lift(self, space: VariableSpace) -> ElliottRational:
        """Embed an x-only function into a space with lambda variables."""
        if self.space.r != 0 or self.space.n != space.n:
            raise InvalidInput("lift expects an x-only function with matching n")
        pad = (0,) * space.r
        return self.map_exponents(lambda v: pad + tuple(v), space)

    def to_dict(self) -> dict:
        return to_dict(self)

    def __str__(self):
        return format_rational(self)


def substitute_inverse(F: ElliottRational, xs: Iterable[int] | None = None) -> ElliottRational:
    """Replace ``x_i`` by ``1/x_i`` for the given 0-based x indices (all by default)."""
    r = F.space.r
    idx = set(range(F.space.n) if xs is None else xs)
    if any(i < 0 or i >= F.space.n for i in idx):
        raise InvalidInput("x index out of range")
    flip = tuple(-1 if (i >= r and i - r in idx) else 1 for i in range(F.space.dim))
    return F.map_exponents(lambda v: tuple(s * e for s, e in zip(flip, v)))


def add(F, G):
    return F + G


def negate(F):
    return -F


def multiply(F, G):
    return F * G


# ---------------------------------------------------------------------------
# exact zero test

_PRIME = (1 << 61) - 1


class _BadPoint(Exception):
    pass


def _canonical_groups(F: ElliottRational) -> dict:
    groups: dict = {}
    for t in F.terms:
        t = orient_term(t, CANONICAL_ORDER)
        poly = groups.setdefault(t.den, {})
        v = poly.get(t.num, 0) + t.coef
        if v:
            poly[t.num] = v
        else:
            poly.pop(t.num, None)
    return {den: poly for den, poly in groups.items() if poly}


def _eval_mod(groups: dict, point) -> int:
    P = _PRIME
    cache: dict = {}

    def mono(m):
        v = cache.get(m)
        if v is None:
            v = 1
            for base, e in zip(point, m):
                if e:
                    v = v * pow(base, e, P) % P
            cache[m] = v
        return v

    total = 0
    for den, poly in groups.items():
        d = 1
        for m, mult in den:
            f = (1 - mono(m)) % P
            if f == 0:
                raise _BadPoint
            d = d * pow(f, mult, P) % P
        s = 0
        for m, c in poly.items():
            c = Fraction(c)
            if c.denominator % P == 0:
                raise _BadPoint
            s += c.numerator * pow(c.denominator, -1, P) * mono(m)
        total = (total + s % P * pow(d, -1, P)) % P
    return total


def _cleared_numerator(groups: dict) -> dict:
    lcd: dict = {}
    for den in groups:
        for m, mult in den:
            if mult > lcd.get(m, 0):
                lcd[m] = mult
    total: dict = {}
    for den, poly in groups.items():
        have = dict(den)
        cur = dict(poly)
        for m, mult in lcd.items():
            for _ in range(mult - have.get(m, 0)):
                cur = poly_times_binomial(cur, m)
        poly_add_into(total, cur)
    return total


_RNG = random.Random(1729)
_POINTS: list = []


def _points(dim: int, count: int = 3):
    while len(_POINTS) < count:
        _POINTS.append([_RNG.randrange(2, _PRIME - 1) for _ in range(64)])
    for p in _POINTS[:count]:
        if dim > len(p):
            p.extend(_RNG.randrange(2, _PRIME - 1) for _ in range(dim - len(p)))
        yield p[:dim]


def is_zero(F: ElliottRational) -> bool:
    """Decide ``F == 0`` as a rational function, exactly.

    Terms are brought to a canonical orientation and grouped by denominator.
    A nonzero value at a random point modulo a large prime proves ``F != 0``;
    otherwise the numerator over the least common multiple of the factor
    multisets is expanded and compared with zero.
    """
    groups = _canonical_groups(F)
    if not groups:
        return True
    for point in _points(F.space.dim):
        try:
            if _eval_mod(groups, point) != 0:
                return False
            break
        except _BadPoint:
            continue
    return not _cleared_numerator(groups)


def equals(F: ElliottRational, G: ElliottRational) -> bool:
    return is_zero(F - G)


# ---------------------------------------------------------------------------
# power series


def series_truncate(F: ElliottRational, degree: int) -> dict:
    """Power-series coefficients of all monomials with total x-degree <= degree.

    Keys are full exponent vectors.  Every factor must be lambda-free with
    nonnegative x-exponents of positive total degree.
    """
    space = F.space
    r = space.r
    out: dict = {}
    for t in F.terms:
        facs = []
        for m, mult in t.den:
            if any(m[:r]) or any(e < 0 for e in m[r:]) or sum(m[r:]) <= 0:
                raise NotPowerSeriesExpandable(
                    f"factor 1 - {format_monomial(m, space)} has no power-series expansion"
                )
            facs.append((m, mult, sum(m[r:])))
        room = degree - space.x_degree(t.num)
        if room < 0:
            continue
        for ks in _bounded_compositions([d for _, _, d in facs], room):
            c = t.coef
            mono = t.num
            for k, (m, mult, _) in zip(ks, facs):
                if k:
                    c *= negative_binomial(k, mult)
                    mono = vadd(mono, vscale(k, m))
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def _bounded_compositions(weights: Sequence[int], room: int):
    """All ``k >= 0`` with ``sum k_j * weights_j <= room``."""
    if not weights:
        yield ()
        return
    w, rest = weights[0], weights[1:]
    for k in range(room // w + 1):
        for tail in _bounded_compositions(rest, room - k * w):
            yield (k,) + tail


# ---------------------------------------------------------------------------
# text forms


def to_dict(F: ElliottRational) -> dict:
    doc = {
        "r": F.space.r,
        "n": F.space.n,
        "terms": [
            {
                "coef": format_fraction(t.coef),
                "num": list(t.num),
                "den": [{"mono": list(m), "mult": mult} for m, mult in t.den],
            }
            for t in F.terms
        ],
    }
    if F.space.names is not None:
        doc["names"] = list(F.space.names)
    return doc


def from_dict(doc: dict) -> ElliottRational:
    try:
        names = doc.get("names")
        space = VariableSpace(int(doc["r"]), int(doc["n"]), tuple(names) if names else None)
        terms = []
        for item in doc["terms"]:
            factors = [(tuple(int(e) for e in f["mono"]), int(f.get("mult", 1))) for f in item.get("den", [])]
            for m, _ in factors:
                space.check(m)
            num = space.check(tuple(int(e) for e in item["num"]))
            terms.append(ElliottTerm.make(as_fraction(item["coef"]), num, factors))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed rational-function document: {exc}") from exc
    return ElliottRational(space, tuple(terms))


def format_term(t: ElliottTerm, space: VariableSpace) -> str:
    num = format_monomial(t.num, space)
    if t.coef == 1:
        head = num
    elif t.coef == -1:
        head = "-" + num
    else:
        head = format_fraction(t.coef) + ("" if num == "1" else "*" + num)
    if not t.den:
        return head
    den = "".join(
        f"(1-{format_monomial(m, space)})" + (f"^{mult}" if mult > 1 else "")
        for m, mult in sorted(t.den, key=lambda f: tuple(reversed(f[0])))
    )
    return f"{head}/{den}"


def format_rational(F: ElliottRational) -> str:
    if not F.terms:
        return "0"
    text = " + ".join(format_term(t, F.space) for t in F.terms)
    return text.replace("+ -", "- ")


def series_to_text(series: dict, space: VariableSpace) -> list:
    """Sorted ``[monomial, coefficient]`` pairs for reports."""
    items = sorted(series.items(), key=lambda kv: (space.x_degree(kv[0]), kv[0]))
    return [[format_monomial(m, space), format_fraction(c)] for m, c in items]


def monomials_up_to(n: int, degree: int):
    """Every exponent vector in ``N^n`` with total degree at most ``degree``."""
    for v in product(range(degree + 1), repeat=n):
        if sum(v) <= degree:
            yield v


@lru_cache(maxsize=None)
def negative_binomial(k: int, mult: int) -> int:
    """Coefficient of ``m^k`` in ``(1 - m)^-mult``."""
    return comb(k + mult - 1, mult - 1)
