"""PBW normal forms and Hopf operations for the enveloping algebra.

A monomial is a flat exponent tuple over the letter sequence

    Y[beta_1] .. Y[beta_N]  H[1] .. H[r]  X[beta_1] .. X[beta_N]

with the positive roots in their canonical (height, lex) order.  Words are
rewritten to this normal order by adjacent transpositions against the
Chevalley bracket table; structure constants are integers, so rewriting
stays over the integers and scalars multiply in afterwards.

The transpose involution ``omega`` is the anti-automorphism with
``omega(X_beta) = Y_beta``, ``omega(Y_beta) = X_beta`` and ``omega(H) = H``.
With the extraspecial-pair normalization of the root vectors this holds for
every positive root, not only the simple ones, and it is the convention that
makes the graded bilinear form of the shapovalov module symmetric.  The
antipode is the usual one (letters negate, words reverse).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .rootsys import KH, KX, KY
from .scalars import ExprParser, QQ, Tokenizer, scalar_to_str


class UEA:
    """Enveloping-algebra context: a root system plus a scalar field."""

    def __init__(self, rs, field=QQ):
        rs.require_bracket()
        self.rs = rs
        self.field = field
        self.npos = rs.npos
        self.rank = rs.rank
        self.nletters = 2 * rs.npos + rs.rank
        self.flat_letters = rs.letters()
        self.flat_index = {l: i for i, l in enumerate(self.flat_letters)}
        self._flat_bracket = rs.cache("flat_bracket", self._build_flat_bracket)
        self._omega_swap = [self._omega_flat(i) for i in range(self.nletters)]

    def _build_flat_bracket(self):
        table = {}
        for (a, b), entry in self.rs.bracket.items():
            fa, fb = self.flat_index[a], self.flat_index[b]
            table[(fa, fb)] = {self.flat_index[l]: c for l, c in entry.items()}
        return table

    def _omega_flat(self, i):
        kind, idx = self.flat_letters[i]
        if kind == KH:
            return i
        return self.flat_index[(KX if kind == KY else KY, idx)]

    # -- element constructors -------------------------------------------------
    def zero(self):
        return PBWElem(self, {})

    def one(self):
        return PBWElem(self, {(0,) * self.nletters: self.field.one})

    def scalar(self, c):
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        return PBWElem(self, {(0,) * self.nletters: c})

    def _root_idx(self, k):
        if isinstance(k, tuple):
            return self.rs.root_index[k]
        return k

    def letter_elem(self, letter, power=1):
        i = self.flat_index[letter]
        mono = [0] * self.nletters
        mono[i] = power
        return PBWElem(self, {tuple(mono): self.field.one})

    def Y(self, k=0, power=1):
        return self.letter_elem((KY, self._root_idx(k)), power)

    def H(self, i=0, power=1):
        return self.letter_elem((KH, i), power)

    def X(self, k=0, power=1):
        return self.letter_elem((KX, self._root_idx(k)), power)

    # -- normal ordering -------------------------------------------------------
    def _mono_to_word(self, mono):
        word = []
        for i, e in enumerate(mono):
            if e:
                word.extend([i] * e)
        return tuple(word)

    def _word_to_mono(self, word):
        mono = [0] * self.nletters
        for i in word:
            mono[i] += 1
        return tuple(mono)

    def _normal_word(self, word):
        """Normal form of a product of letters: dict mono -> Fraction."""
        pending = {word: Fraction(1)}
        result = {}
        while pending:
            w, c = pending.popitem()
            pos = None
            for k in range(len(w) - 1):
                if w[k] > w[k + 1]:
                    pos = k
                    break
            if pos is None:
                mono = self._word_to_mono(w)
                s = result.get(mono, Fraction(0)) + c
                if s:
                    result[mono] = s
                else:
                    result.pop(mono, None)
                continue
            a, b = w[pos], w[pos + 1]
            swapped = w[:pos] + (b, a) + w[pos + 2:]
            s = pending.get(swapped, Fraction(0)) + c
            if s:
                pending[swapped] = s
            else:
                pending.pop(swapped, None)
            for g, cg in self._flat_bracket.get((a, b), {}).items():
                wg = w[:pos] + (g,) + w[pos + 2:]
                s = pending.get(wg, Fraction(0)) + c * cg
                if s:
                    pending[wg] = s
                else:
                    pending.pop(wg, None)
        return result

    def _mul_monomials(self, m1, m2):
        cache = self.rs.cache("mul_mono", dict)
        key = (m1, m2)
        hit = cache.get(key)
        if hit is None:
            hit = self._normal_word(self._mono_to_word(m1) + self._mono_to_word(m2))
            cache[key] = hit
        return hit

    # -- algebra and Hopf operations -------------------------------------------
    def multiply(self, a, b):
        out = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                c12 = c1 * c2
                for mono, k in self._mul_monomials(m1, m2).items():
                    s = out.get(mono, self.field.zero) + k * c12
                    if self.field.is_zero(s):
                        out.pop(mono, None)
                    else:
                        out[mono] = s
        return PBWElem(self, out)

    def antipode(self, a):
        out = self.zero()
        for mono, c in a.terms.items():
            word = self._mono_to_word(mono)
            sign = -1 if len(word) % 2 else 1
            nf = self._normal_word(tuple(reversed(word)))
            out = out + PBWElem(self, {m: sign * k * c for m, k in nf.items()})
        return out

    def chevalley_involution(self, a):
        """Transpose anti-involution: X_beta <-> Y_beta, H fixed."""
        out = self.zero()
        for mono, c in a.terms.items():
            word = self._mono_to_word(mono)
            swapped = tuple(self._omega_swap[i] for i in reversed(word))
            nf = self._normal_word(swapped)
            out = out + PBWElem(self, {m: k * c for m, k in nf.items()})
        return out

    def theta(self, a):
        """omega after the antipode; maps U(n-)[-beta] onto U(n+)[beta]."""
        return self.chevalley_involution(self.antipode(a))

    def coproduct(self, a):
        """dict (mono, mono) -> scalar; both tensor factors stay normal
        because subwords of a sorted word are sorted."""
        out = {}
        for mono, c in a.terms.items():
            parts = [((0,) * self.nletters, (0,) * self.nletters, Fraction(1))]
            for i, e in enumerate(mono):
                if not e:
                    continue
                new = []
                for m1, m2, k in parts:
                    for j in range(e + 1):
                        mm1 = list(m1)
                        mm2 = list(m2)
                        mm1[i] += j
                        mm2[i] += e - j
                        new.append((tuple(mm1), tuple(mm2), k * comb(e, j)))
                parts = new
            for m1, m2, k in parts:
                key = (m1, m2)
                s = out.get(key, self.field.zero) + k * c
                if self.field.is_zero(s):
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    def counit(self, a):
        return a.terms.get((0,) * self.nletters, self.field.zero)

    def project_zero(self, a):
        """Projection onto U(h) along n- U(g) + U(g) n+."""
        out = {}
        for mono, c in a.terms.items():
            if self._is_cartan_mono(mono):
                out[mono] = c
        return PBWElem(self, out)

    def _is_cartan_mono(self, mono):
        return (all(e == 0 for e in mono[:self.npos])
                and all(e == 0 for e in mono[self.npos + self.rank:]))

    def evaluate_at(self, a, lam):
        """Evaluate an element of U(h) at a weight: H_i -> <lam, alpha_i^vee>."""
        total = None
        for mono, c in a.terms.items():
            if not self._is_cartan_mono(mono):
                raise ValueError("element is not in the Cartan part")
            val = c
            for i in range(self.rank):
                e = mono[self.npos + i]
                if e:
                    val = val * lam[i] ** e
            total = val if total is None else total + val
        if total is None:
            return self.field.zero
        return total

    # -- grading ----------------------------------------------------------------
    def mono_weight(self, mono):
        """Root-lattice weight under the adjoint Cartan action."""
        w = [0] * self.rank
        for k in range(self.npos):
            ey = mono[k]
            ex = mono[self.npos + self.rank + k]
            if ey or ex:
                root = self.rs.positive_roots[k]
                for j in range(self.rank):
                    w[j] += (ex - ey) * root[j]
        return tuple(w)

    def mono_lower_degree(self, mono):
        """Q+ degree of the Y part."""
        w = [0] * self.rank
        for k in range(self.npos):
            if mono[k]:
                root = self.rs.positive_roots[k]
                for j in range(self.rank):
                    w[j] += mono[k] * root[j]
        return tuple(w)

    def mono_letters(self, mono):
        return [(self.flat_letters[i], e) for i, e in enumerate(mono) if e]

    # -- text form ---------------------------------------------------------------
    def render(self, a):
        if not a.terms:
            return "0"
        parts = []
        for mono in sorted(a.terms):
            c = a.terms[mono]
            factors = [scalar_to_str(c)]
            for (kind, idx), e in self.mono_letters(mono):
                if kind == KH:
                    body = "H[%d]" % (idx + 1)
                else:
                    coords = ",".join(str(x) for x in self.rs.positive_roots[idx])
                    body = "%s[%s]" % ("Y" if kind == KY else "X", coords)
                factors.append(body if e == 1 else "%s^%d" % (body, e))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def parse(self, text):
        return _ElementParser(Tokenizer(text), self).parse()


class PBWElem:
    """Normally ordered element: map monomial -> nonzero scalar."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if not alg.field.is_zero(c)}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, PBWElem) and self.alg is other.alg
                and self.terms == other.terms)

    def __add__(self, other):
        if not isinstance(other, PBWElem):
            other = self.alg.scalar(other)
        out = dict(self.terms)
        f = self.alg.field
        for m, c in other.terms.items():
            s = out.get(m, f.zero) + c
            if f.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return PBWElem(self.alg, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PBWElem):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return PBWElem(self.alg, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElem):
            return self.alg.multiply(self, other)
        c = self.alg.field.coerce(other)
        return PBWElem(self.alg, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = self.alg.field.coerce(other)
        return PBWElem(self.alg, {m: c * v for m, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, PBWElem):
            if not other.is_scalar():
                raise ValueError("can only divide by scalars")
            other = other.scalar_value()
        inv = self.alg.field.one / self.alg.field.coerce(other)
        return self * inv

    def __pow__(self, n):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def is_scalar(self):
        zero_mono = (0,) * self.alg.nletters
        return all(m == zero_mono for m in self.terms)

    def scalar_value(self):
        return self.alg.counit(self)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def weight(self):
        """Common root-lattice weight; raises for mixed-weight elements."""
        ws = {self.alg.mono_weight(m) for m in self.terms}
        if len(ws) > 1:
            raise ValueError("element does not have a single weight")
        return ws.pop() if ws else (0,) * self.alg.rank

    def in_lower(self):
        n = self.alg.npos
        return all(all(e == 0 for e in m[n:]) for m in self.terms)

    def in_upper(self):
        n = self.alg.npos + self.alg.rank
        return all(all(e == 0 for e in m[:n]) for m in self.terms)

    def in_cartan(self):
        return all(self.alg._is_cartan_mono(m) for m in self.terms)

    def __repr__(self):
        return self.alg.render(self)


class _ElementParser(ExprParser):
    """Element grammar on top of the scalar expression parser: the extra
    atoms are Y[coords], H[i], X[coords]."""

    def __init__(self, tz, alg):
        super().__init__(tz, alg.field)
        self.alg = alg

    def parse_atom(self):
        tok = self.tz.peek()
        if tok[0] == "name" and tok[1] in ("Y", "H", "X"):
            self.tz.next()
            self.tz.expect("[")
            nums = [self._int()]
            while self.tz.peek()[0] == ",":
                self.tz.next()
                nums.append(self._int())
            self.tz.expect("]")
            if tok[1] == "H":
                if len(nums) != 1:
                    raise ValueError("H takes a single index")
                return self.alg.H(nums[0] - 1)
            coords = tuple(nums)
            if coords not in self.alg.rs.root_index:
                raise ValueError("%r is not a positive root" % (coords,))
            k = self.alg.rs.root_index[coords]
            return self.alg.Y(k) if tok[1] == "Y" else self.alg.X(k)
        if tok[0] == "num":
            self.tz.next()
            return self.alg.scalar(tok[1])
        if tok[0] == "name" and tok[1] in getattr(self.alg.field, "vars", ()):
            self.tz.next()
            return self.alg.scalar(self.alg.field.var(tok[1]))
        if tok[0] == "(":
            self.tz.next()
            val = self.parse_sum()
            self.tz.expect(")")
            return val
        raise ValueError("unexpected token %r" % (tok,))

    def _int(self):
        neg = False
        if self.tz.peek()[0] == "-":
            self.tz.next()
            neg = True
        tok = self.tz.expect("num")
        return -tok[1] if neg else tok[1]

    def power(self, a, n):
        if n < 0:
            raise ValueError("negative powers of algebra elements")
        return a ** n


def parse_element(alg, text):
    return alg.parse(text)
