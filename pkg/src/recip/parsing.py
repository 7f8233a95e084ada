"""Reading rational functions written as text.

Accepted syntax: integers, variable names, ``+ - * / ^`` and parentheses.
Juxtaposition multiplies and binds tighter than ``*`` and ``/``, so
``x^2/(1-x)(1-y)`` has both binomials in the denominator (this is also how
rational functions are printed).  A divisor must be a monomial times powers
of binomials ``1 - m``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ElliottRational, ElliottTerm, VariableSpace, vadd, vscale, vsub
from .errors import InvalidInput

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokens(text: str):
    out = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None and not sym.isspace():
            if sym not in "+-*/^()":
                raise InvalidInput(f"unexpected character {sym!r} in {text!r}")
            out.append(("sym", sym))
    return out


@dataclass
class _Value:
    rat: ElliottRational
    # c * x^a * prod (1 - x^m)^k with k >= 0, when known
    prod: tuple | None = None


class _Parser:
    def __init__(self, text: str, space: VariableSpace):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.space = space
        self.names = {name: k for k, name in enumerate(space.variable_names())}

    # helpers ------------------------------------------------------------

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None:
            raise InvalidInput(f"unexpected end of expression {self.text!r}")
        if sym is not None and tok != ("sym", sym):
            raise InvalidInput(f"expected {sym!r} in {self.text!r}")
        self.i += 1
        return tok

    def const(self, c) -> _Value:
        c = Fraction(c)
        prod = (c, self.space.zero(), ()) if c else None
        return _Value(ElliottRational.constant(self.space, c), prod)

    def detect(self, rat: ElliottRational) -> tuple | None:
        """Product form of a Laurent polynomial with at most two terms."""
        poly = {}
        for t in rat.terms:
            if t.den:
                return None
            poly[t.num] = poly.get(t.num, 0) + t.coef
        poly = {m: c for m, c in poly.items() if c}
        if len(poly) == 1:
            (m, c), = poly.items()
            return (c, m, ())
        if len(poly) == 2:
            (p, c1), (q, c2) = sorted(poly.items())
            if c1 == -c2:
                return (c1, p, ((vsub(q, p), 1),))
        return None

    def expand(self, prod) -> ElliottRational:
        c, a, bins = prod
        out = ElliottRational.monomial(self.space, a, c)
        for m, k in bins:
            one_minus = ElliottRational(
                self.space,
                (ElliottTerm(Fraction(1), self.space.zero()), ElliottTerm(Fraction(-1), m)),
            )
            for _ in range(k):
                out = out * one_minus
        return out

    # grammar ------------------------------------------------------------

    def parse(self) -> ElliottRational:
        v = self.expr()
        if self.peek()[0] is not None:
            raise InvalidInput(f"trailing input in {self.text!r}")
        return v.rat.collect()

    def expr(self) -> _Value:
        sign = 1
        if self.peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term()
        rat = v.rat if sign > 0 else -v.rat
        single = True
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            w = self.term()
            rat = rat + w.rat if op == "+" else rat - w.rat
            single = False
        if single:
            prod = v.prod
            if prod is not None and sign < 0:
                prod = (-prod[0], prod[1], prod[2])
            return _Value(rat, prod)
        rat = rat.collect()
        return _Value(rat, self.detect(rat))

    def term(self) -> _Value:
        v = self.group()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            w = self.group()
            v = self.mul(v, w) if op == "*" else self.div(v, w)
        return v

    def group(self) -> _Value:
        v = self.power()
        while self.peek()[0] in ("num", "name") or self.peek() == ("sym", "("):
            v = self.mul(v, self.power())
        return v

    def power(self) -> _Value:
        v = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            neg = False
            if self.peek() == ("sym", "-"):
                self.take()
                neg = True
            kind, k = self.take()
            if kind != "num":
                raise InvalidInput(f"exponent must be an integer in {self.text!r}")
            v = self.pow(v, -k if neg else k)
        return v

    def atom(self) -> _Value:
        kind, val = self.take()
        if kind == "num":
            return self.const(val)
        if kind == "name":
            if val not in self.names:
                raise InvalidInput(f"unknown variable {val!r}; expected one of {sorted(self.names)}")
            e = self.space.unit(self.names[val])
            return _Value(ElliottRational.monomial(self.space, e), (Fraction(1), e, ()))
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise InvalidInput(f"unexpected {val!r} in {self.text!r}")

    # arithmetic on values ------------------------------------------

    def mul(self, v: _Value, w: _Value) -> _Value:
        prod = None
        if v.prod is not None and w.prod is not None:
            prod = (v.prod[0] * w.prod[0], vadd(v.prod[1], w.prod[1]), v.prod[2] + w.prod[2])
        return _Value(v.rat * w.rat, prod)

    def inverse(self, w: _Value) -> ElliottRational:
        if w.prod is None:
            raise InvalidInput(
                f"in {self.text!r}: a divisor must be a monomial times powers of binomials 1 - m"
            )
        c, a, bins = w.prod
        return ElliottRational(
            self.space, (ElliottTerm.make(1 / Fraction(c), vscale(-1, a), bins),)
        )

    def div(self, v: _Value, w: _Value) -> _Value:
        rat = v.rat * self.inverse(w)
        prod = None
        if v.prod is not None and w.prod is not None and not w.prod[2]:
            prod = (v.prod[0] / w.prod[0], vsub(v.prod[1], w.prod[1]), v.prod[2])
        return _Value(rat, prod)

    def pow(self, v: _Value, k: int) -> _Value:
        if k < 0:
            base = _Value(self.inverse(v), None)
            if v.prod is not None and not v.prod[2]:
                base.prod = (1 / v.prod[0], vscale(-1, v.prod[1]), ())
            return self.pow(base, -k)
        out = self.const(1)
        for _ in range(k):
            out = self.mul(out, v)
        return out


def parse_rational(text: str, names=("x",)) -> ElliottRational:
    """Parse ``text`` into an x-only rational function over ``names``."""
    space = VariableSpace(0, len(names), tuple(names))
    return _Parser(text, space).parse()
