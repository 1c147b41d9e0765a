"""Exact scalar fields: rationals and rational-function fields over them.

Every coefficient in this package is either a ``fractions.Fraction`` (field
``QQ``) or a :class:`RatFun` over a :class:`PolyRing` in the parameter
variables (``t`` for one-parameter lines, ``L1..Lr`` for symbolic weights).
Rational functions are kept fully reduced: numerator and denominator are
coprime, the denominator is an integer-coefficient primitive polynomial with
positive leading coefficient (lexicographic order).  Equality is therefore
structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

_RING_CACHE = {}


class PolyRing:
    """Multivariate polynomial ring over QQ with a fixed variable tuple."""

    __slots__ = ("vars", "nvars")

    def __new__(cls, variables):
        variables = tuple(variables)
        ring = _RING_CACHE.get(variables)
        if ring is None:
            ring = object.__new__(cls)
            ring.vars = variables
            ring.nvars = len(variables)
            _RING_CACHE[variables] = ring
        return ring

    def const(self, c):
        c = Fraction(c)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, name):
        i = self.vars.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        return Poly(self, {tuple(exps): Fraction(1)})

    @property
    def zero(self):
        return self.const(0)

    @property
    def one(self):
        return self.const(1)

    def __repr__(self):
        return "PolyRing(%s)" % (",".join(self.vars))


class Poly:
    """Sparse polynomial: map exponent-tuple -> nonzero Fraction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, prune=True):
        self.ring = ring
        if prune:
            self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}
        else:
            self.terms = terms

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def const_value(self):
        if not self.terms:
            return Fraction(0)
        return next(iter(self.terms.values()))

    def degree(self, i):
        """Degree in variable i (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, Fraction(0)) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Poly(self.ring, res, prune=False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, Fraction(0)) - c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Poly(self.ring, res, prune=False)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, prune=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = res.get(e, Fraction(0)) + c1 * c2
                if s:
                    res[e] = s
                else:
                    res.pop(e, None)
        return Poly(self.ring, res, prune=False)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return self.ring.zero
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()}, prune=False)

    def __pow__(self, n):
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def leading(self):
        """(exponent, coefficient) of the lexicographically greatest monomial."""
        e = max(self.terms)
        return e, self.terms[e]

    def content(self):
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = int_gcd(num, abs(c.numerator))
            den = den * c.denominator // int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """(content-with-sign, primitive integer polynomial)."""
        if not self.terms:
            return Fraction(1), self
        c = self.content()
        _, lead = self.leading()
        if lead < 0:
            c = -c
        return c, self.scale(1 / c)

    def subs(self, values):
        """Evaluate at {var-index: Fraction}; must cover all variables present."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term *= values[i] ** k
            total += term
        return total

    def subs_poly(self, values):
        """Substitute {var-index: Poly} for a subset of variables."""
        out = self.ring.zero
        for e, c in self.terms.items():
            rest = list(e)
            factor = self.ring.const(c)
            for i in sorted(values):
                k = rest[i]
                if k:
                    rest[i] = 0
                    factor = factor * (values[i] ** k)
            mono = Poly(self.ring, {tuple(rest): Fraction(1)})
            out = out + factor * mono
        return out

    def divexact(self, d):
        """Exact division (raises ValueError if the division is not exact)."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if d.is_const():
            return self.scale(1 / d.const_value())
        rem = self
        quo = {}
        de, dc = d.leading()
        while not rem.is_zero():
            re, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(x < 0 for x in qe):
                raise ValueError("inexact polynomial division")
            qc = rc / dc
            quo[qe] = quo.get(qe, Fraction(0)) + qc
            rem = rem - d * Poly(self.ring, {qe: qc})
        return Poly(self.ring, quo)

    def __repr__(self):
        return "Poly(%s)" % poly_to_str(self)


def _univar(p, k):
    """View p as a univariate polynomial in variable k: list of Poly coefficients."""
    deg = p.degree(k)
    coeffs = [dict() for _ in range(deg + 1)]
    for e, c in p.terms.items():
        rest = list(e)
        d = rest[k]
        rest[k] = 0
        coeffs[d][tuple(rest)] = c
    return [Poly(p.ring, t, prune=False) for t in coeffs]


def _from_univar(ring, coeffs, k):
    terms = {}
    for d, poly in enumerate(coeffs):
        for e, c in poly.terms.items():
            ee = list(e)
            ee[k] += d
            terms[tuple(ee)] = c
    return Poly(ring, terms)


def _uni_mul_xk(p, k, d):
    terms = {}
    for e, c in p.terms.items():
        ee = list(e)
        ee[k] += d
        terms[tuple(ee)] = c
    return Poly(p.ring, terms, prune=False)


def _pseudo_rem(a, b, k):
    """Pseudo-remainder lc(b)^(da-db+1) a mod b, univariate in variable k.
    The scaling factor is applied in full even when intermediate degrees
    skip, as the subresultant divisions require."""
    da, db = a.degree(k), b.degree(k)
    lb = _univar(b, k)[-1]
    rem = a
    steps = 0
    while not rem.is_zero() and rem.degree(k) >= db:
        dr = rem.degree(k)
        lr = _univar(rem, k)[-1]
        rem = rem * lb - _uni_mul_xk(lr * b, k, dr - db)
        steps += 1
    for _ in range(da - db + 1 - steps):
        rem = rem * lb
    return rem


def _content_in(p, k):
    """gcd of the coefficients of p viewed as univariate in k."""
    coeffs = [c for c in _univar(p, k) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_const():
            break
    return g


def _try_divides(d, p):
    try:
        p.divexact(d)
        return True
    except ValueError:
        return False


def poly_gcd(a, b):
    """gcd normalized to a primitive integer polynomial with positive leading
    coefficient.  Subresultant PRS in the main variable, so content gcds are
    only needed on entry and exit of each recursion level."""
    if a.is_zero():
        return b.primitive()[1] if not b.is_zero() else a
    if b.is_zero():
        return a.primitive()[1]
    if a.is_const() or b.is_const():
        return a.ring.one
    # main variable: fewest PRS steps
    candidates = [i for i in range(a.ring.nvars)
                  if a.degree(i) > 0 or b.degree(i) > 0]
    k = min(candidates, key=lambda i: min(max(a.degree(i), 0), max(b.degree(i), 0)))
    if a.degree(k) <= 0 or b.degree(k) <= 0:
        free = a if a.degree(k) <= 0 else b
        other = b if free is a else a
        return poly_gcd(free, _content_in(other, k))
    ca = _content_in(a, k)
    cb = _content_in(b, k)
    pa = a.divexact(ca)
    pb = b.divexact(cb)
    if pa.degree(k) < pb.degree(k):
        pa, pb = pb, pa
    if _try_divides(pb, pa):
        return (poly_gcd(ca, cb) * pb.primitive()[1]).primitive()[1]
    g = a.ring.one
    h = a.ring.one
    while True:
        delta = pa.degree(k) - pb.degree(k)
        rem = _pseudo_rem(pa, pb, k)
        if rem.is_zero():
            pb = pb.divexact(_content_in(pb, k))
            break
        if rem.degree(k) <= 0:
            pb = a.ring.one
            break
        pa, pb = pb, rem.divexact(g * h ** delta)
        g = _univar(pa, k)[-1]
        if delta >= 1:
            h = (g ** delta).divexact(h ** (delta - 1))
    out = poly_gcd(ca, cb) * pb
    return out.primitive()[1]


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFun:
    """Reduced rational function num/den over a PolyRing."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den, reduced=False):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = ring.one
            else:
                g = poly_gcd(num, den)
                if not g.is_const() or g.const_value() != 1:
                    num = num.divexact(g)
                    den = den.divexact(g)
                c, den = den.primitive()
                num = num.scale(1 / c)
        self.ring = ring
        self.num = num
        self.den = den

    # -- coercion helpers ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun(self.ring, self.ring.const(other), self.ring.one, reduced=True)
        if isinstance(other, Poly):
            return RatFun(self.ring, other, self.ring.one)
        return NotImplemented

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.ring, self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.ring, self.num * other.den - other.num * self.den,
                      self.den * other.den)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return RatFun(self.ring, -self.num, self.den, reduced=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.ring, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.ring, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other.__truediv__(self)

    def __pow__(self, n):
        if n < 0:
            return (RatFun(self.ring, self.den, self.num)) ** (-n)
        return RatFun(self.ring, self.num ** n, self.den ** n)

    def subs(self, values):
        """Evaluate at {var-index: Fraction}.  Raises on a pole."""
        d = self.den.subs(values)
        if d == 0:
            raise ZeroDivisionError("pole at the requested substitution point")
        return self.num.subs(values) / d

    def laurent(self, k, order):
        """Laurent expansion in variable k at 0.

        Returns (minexp, coeffs) with coeffs[j] the coefficient of
        x^(minexp+j), covering exponents up to ``order`` inclusive.  All
        other variables must be absent.
        """
        for i in range(self.ring.nvars):
            if i != k and (self.num.degree(i) > 0 or self.den.degree(i) > 0):
                raise ValueError("laurent expansion needs a univariate rational function")
        if self.is_zero():
            return 0, [Fraction(0)] * (order + 1)
        ncoef = [c.const_value() for c in _univar(self.num, k)]
        dcoef = [c.const_value() for c in _univar(self.den, k)]
        a = next(i for i, c in enumerate(ncoef) if c != 0)
        b = next(i for i, c in enumerate(dcoef) if c != 0)
        minexp = a - b
        n = order - minexp + 1
        if n <= 0:
            return minexp, []
        nn = ncoef[a:] + [Fraction(0)] * n
        dd = dcoef[b:] + [Fraction(0)] * n
        out = []
        for j in range(n):
            c = (nn[j] - sum(out[i] * dd[j - i] for i in range(j))) / dd[0]
            out.append(c)
        return minexp, out

    def __repr__(self):
        return "RatFun(%s)" % scalar_to_str(self)


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class Rationals:
    """The field QQ; elements are fractions.Fraction."""

    name = "QQ"
    vars = ()

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return parse_scalar(self, x)
        if isinstance(x, RatFun) and x.is_const():
            return x.const_value()
        raise TypeError("cannot coerce %r into QQ" % (x,))

    def is_zero(self, x):
        return x == 0

    def __repr__(self):
        return "QQ"


class FunctionField:
    """QQ(vars): univariate QQ(t) or multivariate QQ(L1..Lr)."""

    def __init__(self, variables):
        self.ring = PolyRing(variables)
        self.vars = self.ring.vars
        self.name = "QQ(%s)" % ",".join(self.vars)

    @property
    def zero(self):
        return RatFun(self.ring, self.ring.zero, self.ring.one, reduced=True)

    @property
    def one(self):
        return RatFun(self.ring, self.ring.one, self.ring.one, reduced=True)

    def var(self, name):
        return RatFun(self.ring, self.ring.var(name), self.ring.one, reduced=True)

    def coerce(self, x):
        if isinstance(x, RatFun) and x.ring is self.ring:
            return x
        if isinstance(x, (int, Fraction)):
            return RatFun(self.ring, self.ring.const(x), self.ring.one, reduced=True)
        if isinstance(x, Poly) and x.ring is self.ring:
            return RatFun(self.ring, x, self.ring.one)
        if isinstance(x, str):
            return parse_scalar(self, x)
        raise TypeError("cannot coerce %r into %s" % (x, self.name))

    def is_zero(self, x):
        return self.coerce(x).is_zero()

    def __eq__(self, other):
        return isinstance(other, FunctionField) and self.vars == other.vars

    def __hash__(self):
        return hash(self.vars)

    def __repr__(self):
        return self.name


QQ = Rationals()


def function_field(*variables):
    return FunctionField(variables)


def line_field():
    """QQ(t), the coefficient field for one-parameter weight lines."""
    return function_field("t")


def weight_field(rank):
    """QQ(L1..Lr) for fully symbolic weights."""
    return function_field(*("L%d" % (i + 1) for i in range(rank)))


# ---------------------------------------------------------------------------
# rendering / parsing
# ---------------------------------------------------------------------------

def _frac_str(c):
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def poly_to_str(p):
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(p.ring.vars[i])
            elif k > 1:
                factors.append("%s^%d" % (p.ring.vars[i], k))
        if not factors:
            body = _frac_str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_frac_str(abs(c))] + factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


def scalar_to_str(x):
    """Canonical text for a scalar: 'p/q' over QQ, '(num)/(den)' over QQ(vars)."""
    if isinstance(x, (int, Fraction)):
        return _frac_str(Fraction(x))
    if isinstance(x, RatFun):
        if x.is_const():
            return _frac_str(x.const_value())
        if x.den.is_const() and x.den.const_value() == 1:
            return "(%s)" % poly_to_str(x.num)
        return "(%s)/(%s)" % (poly_to_str(x.num), poly_to_str(x.den))
    raise TypeError("not a scalar: %r" % (x,))


class Tokenizer:
    """Shared tokenizer for scalars, weights and algebra elements."""

    def __init__(self, text):
        self.toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("num", int(text[i:j])))
                i = j
            elif ch.isalpha():
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()[],":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ValueError("unexpected character %r" % ch)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("end", None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ValueError("expected %r, got %r" % (kind, tok))
        return tok


class ExprParser:
    """Recursive-descent +,-,*,/,^ parser.  Atoms come from ``parse_atom``."""

    def __init__(self, tz, field):
        self.tz = tz
        self.field = field

    def parse(self):
        val = self.parse_sum()
        if self.tz.peek()[0] != "end":
            raise ValueError("trailing input at %r" % (self.tz.peek(),))
        return val

    def parse_sum(self):
        val = self.parse_product()
        while self.tz.peek()[0] in "+-":
            op = self.tz.next()[0]
            rhs = self.parse_product()
            val = val + rhs if op == "+" else val - rhs
        return val

    def parse_product(self):
        val = self.parse_power()
        while self.tz.peek()[0] in "*/":
            op = self.tz.next()[0]
            rhs = self.parse_power()
            val = val * rhs if op == "*" else self.divide(val, rhs)
        return val

    def parse_power(self):
        val = self.parse_unary()
        if self.tz.peek()[0] == "^":
            self.tz.next()
            tok = self.tz.next()
            neg = False
            if tok[0] == "-":
                neg = True
                tok = self.tz.next()
            if tok[0] != "num":
                raise ValueError("exponent must be an integer")
            val = self.power(val, -tok[1] if neg else tok[1])
        return val

    def parse_unary(self):
        if self.tz.peek()[0] == "-":
            self.tz.next()
            return -self.parse_unary()
        if self.tz.peek()[0] == "+":
            self.tz.next()
            return self.parse_unary()
        return self.parse_atom()

    def parse_atom(self):
        tok = self.tz.peek()
        if tok[0] == "(":
            self.tz.next()
            val = self.parse_sum()
            self.tz.expect(")")
            return val
        if tok[0] == "num":
            self.tz.next()
            return self.field.coerce(tok[1])
        if tok[0] == "name":
            self.tz.next()
            if tok[1] in getattr(self.field, "vars", ()):
                return self.field.var(tok[1])
            raise ValueError("unknown symbol %r" % tok[1])
        raise ValueError("unexpected token %r" % (tok,))

    def divide(self, a, b):
        return a / b

    def power(self, a, n):
        if n < 0:
            return self.field.one / (a ** (-n))
        return a ** n


def parse_scalar(field, text):
    return ExprParser(Tokenizer(text), field).parse()


def parse_weight(field, text, rank):
    """Parse rank-many comma-separated scalar coordinates."""
    coords = [c for c in text.split(",") if c.strip()]
    if len(coords) != rank:
        raise ValueError("expected %d weight coordinates, got %d" % (rank, len(coords)))
    return tuple(parse_scalar(field, c) for c in coords)
