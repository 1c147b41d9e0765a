"""Highest-weight modules: Vermas, irreducible quotients, contravariant form.

A module is stored degreewise up to a height cutoff.  The weight space at
depth beta has a monomial basis (all of U(n-)[-beta] for a Verma; for an
irreducible quotient, the earliest monomials spanning a complement of the
kernel).  Generator actions are matrices between adjacent spaces, produced
by normal ordering letter * monomial and evaluating the Cartan part at the
highest weight.

Finite-dimensional modules expose a flat basis with action matrices for
every Chevalley letter; that is the interface the function-algebra layer
builds matrix-coefficient representations from.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, shapovalov
from .rootsys import KH, KX, KY
from .scalars import QQ
from .uea import PBWElem, UEA


class HWModule:
    def __init__(self, rs, field, lam, kind, cutoff, spaces, kernel_space):
        self.rs = rs
        self.field = field
        self.lam = tuple(lam)
        self.kind = kind
        self.cutoff = cutoff
        self.alg = UEA(rs, field)
        self.spaces = spaces          # dict beta -> list of flat monomials
        self.kernel_space = kernel_space
        self.betas = sorted(spaces, key=lambda b: (sum(b), tuple(-c for c in b)))
        self._reduce = {}             # beta -> (full basis, reduction rows)
        self._act_cache = {}
        if kind == "irreducible":
            self._prepare_reductions()

    # -- structure -------------------------------------------------------------
    def dim(self, beta):
        return len(self.spaces.get(tuple(beta), []))

    def dims(self):
        return {beta: len(m) for beta, m in self.spaces.items() if m}

    def total_dim(self):
        return sum(len(m) for m in self.spaces.values())

    def is_finite(self):
        """True when the module provably has no weight spaces beyond the
        cutoff: a gap of empty levels wider than the largest root height."""
        maxht = max(sum(r) for r in self.rs.positive_roots)
        by_height = {}
        for beta, monos in self.spaces.items():
            if monos:
                by_height[sum(beta)] = by_height.get(sum(beta), 0) + len(monos)
        top = max(by_height) if by_height else 0
        for h in range(top + 1, top + maxht + 1):
            if h <= self.cutoff and by_height.get(h):
                return False
        return top + maxht <= self.cutoff

    def space_weight(self, beta):
        """Fundamental coordinates of lam - beta."""
        return tuple(self.lam[i]
                     - sum(self.rs.cartan[i][j] * beta[j] for j in range(self.rs.rank))
                     for i in range(self.rs.rank))

    def _prepare_reductions(self):
        for beta in self.betas:
            if sum(beta) == 0:
                continue
            full = shapovalov.lower_basis(self.rs, beta)
            kvecs = self.kernel_space.blocks.get(beta, []) if self.kernel_space else []
            if not kvecs:
                continue
            cols = []
            for v in kvecs:
                cols.append([Fraction(c) for c in v])
            for m in self.spaces[beta]:
                unit = [Fraction(0)] * len(full)
                unit[full.index(m)] = Fraction(1)
                cols.append(unit)
            a = linalg.transpose(cols)
            inv = linalg.invert(QQ, a)
            self._reduce[beta] = (full, inv[len(kvecs):])

    def reduce_lower(self, beta, vec):
        """Coefficients of a full U(n-)[-beta] vector on the coset basis."""
        beta = tuple(beta)
        if beta not in self._reduce:
            return list(vec)
        _, rows = self._reduce[beta]
        return linalg.mat_vec(self.field, rows, vec)

    # -- actions ---------------------------------------------------------------
    def act_letter(self, letter, beta):
        """Matrix of a Chevalley letter from the space at beta into its
        target space; None when the target leaves the cutoff window."""
        beta = tuple(beta)
        key = (letter, beta)
        if key in self._act_cache:
            return self._act_cache[key]
        src = self.spaces.get(beta)
        if src is None:
            raise ValueError("no weight space at depth %r" % (beta,))
        w = self.rs.letter_weight(letter)
        target = tuple(b - x for b, x in zip(beta, w))
        if any(c < 0 for c in target) or sum(target) > self.cutoff:
            mat = None if sum(target) > self.cutoff else self._zero_matrix(target, src)
            self._act_cache[key] = mat
            return mat
        tgt = self.spaces.get(target, [])
        tindex = {m: i for i, m in enumerate(tgt)}
        full_target = shapovalov.lower_basis(self.rs, target)
        findex = {m: i for i, m in enumerate(full_target)}
        lelem = self.alg.letter_elem(letter)
        cols = []
        for m in src:
            prod = lelem * PBWElem(self.alg, {m: self.field.one})
            col = [self.field.zero] * len(full_target)
            for mono, c in prod.terms.items():
                coeff, lower = self._strip_to_lower(mono, c)
                if coeff is None:
                    continue
                col[findex[lower]] = col[findex[lower]] + coeff
            cols.append(self.reduce_lower(target, col) if target in self._reduce
                        else col)
        if target in self._reduce or len(full_target) == len(tgt):
            mat = linalg.transpose(cols) if cols else []
        else:
            # verma: full basis equals the space basis
            mat = linalg.transpose(cols)
        self._act_cache[key] = mat
        return mat

    def _zero_matrix(self, target, src):
        tgt = self.spaces.get(tuple(target), [])
        return [[self.field.zero] * len(src) for _ in range(len(tgt))]

    def _strip_to_lower(self, mono, c):
        """Apply the H and X parts of a normal monomial to the highest
        weight vector: X kills it, H evaluates at lam."""
        npos, rank = self.alg.npos, self.alg.rank
        if any(mono[npos + rank + k] for k in range(npos)):
            return None, None
        coeff = c
        for i in range(rank):
            e = mono[npos + i]
            if e:
                coeff = coeff * self.lam[i] ** e
        lower = mono[:npos] + (0,) * (rank + npos)
        return coeff, lower

    def act_elem(self, u, beta, vec):
        """Action of a PBW element on a vector in the space at beta;
        returns dict target-beta -> coefficient vector."""
        beta = tuple(beta)
        out = {}
        for mono, c in u.terms.items():
            state = {beta: [c * x for x in vec]}
            word = self.alg._mono_to_word(mono)
            for flat in reversed(word):
                letter = self.alg.flat_letters[flat]
                nxt = {}
                for b, v in state.items():
                    mat = self.act_letter(letter, b)
                    if mat is None:
                        raise ValueError("action leaves the height cutoff")
                    w = self.rs.letter_weight(letter)
                    tb = tuple(x - y for x, y in zip(b, w))
                    img = linalg.mat_vec(self.field, mat, v) if mat else []
                    if any(not self.field.is_zero(x) for x in img):
                        acc = nxt.setdefault(tb, [self.field.zero] * len(img))
                        nxt[tb] = [a + x for a, x in zip(acc, img)]
                state = nxt
                if not state:
                    break
            for b, v in state.items():
                if b not in out:
                    out[b] = list(v)
                else:
                    out[b] = [a + x for a, x in zip(out[b], v)]
        return {b: v for b, v in out.items()
                if any(not self.field.is_zero(x) for x in v)}

    # -- flat view for finite modules -------------------------------------------
    def flat_basis(self):
        out = []
        for beta in self.betas:
            for i in range(len(self.spaces[beta])):
                out.append((beta, i))
        return out

    def flat_matrices(self):
        """dict letter -> total action matrix over the flat basis (only for
        finite modules, where every action stays inside the window)."""
        if not self.is_finite():
            raise ValueError("flat matrices need a finite-dimensional module")
        flat = self.flat_basis()
        pos = {bi: k for k, bi in enumerate(flat)}
        n = len(flat)
        mats = {}
        for letter in self.rs.letters():
            rows = [[self.field.zero] * n for _ in range(n)]
            for beta in self.betas:
                src = self.spaces[beta]
                if not src:
                    continue
                mat = self.act_letter(letter, beta)
                if mat is None:
                    if any(sum(beta) + sum(self.rs.letter_weight(letter)) <= 0
                           for _ in (0,)):
                        continue
                    continue
                w = self.rs.letter_weight(letter)
                tb = tuple(b - x for b, x in zip(beta, w))
                tgt = self.spaces.get(tb, [])
                for j in range(len(src)):
                    for i in range(len(tgt)):
                        c = mat[i][j]
                        if not self.field.is_zero(c):
                            rows[pos[(tb, i)]][pos[(beta, j)]] = c
            mats[letter] = rows
        return mats

    def flat_weights(self):
        return [self.space_weight(beta) for beta, _ in self.flat_basis()]

    def __repr__(self):
        return "HWModule(%s, lam=%s, %s, cutoff=%d, dim=%d)" % (
            self.rs.label, self.lam, self.kind, self.cutoff, self.total_dim())


def _default_cutoff(lam, rs):
    """Safe height bound for a dominant integral weight: <lam, 2 rho^vee>
    plus the widest root, so the emptiness gap is visible."""
    from .rootsys import pair
    total = sum(pair(lam, beta, rs) for beta in rs.positive_roots)
    maxht = max(sum(r) for r in rs.positive_roots)
    return int(total) + maxht


def build_verma(lam, cutoff, rs, field=None):
    field = field or shapovalov.field_of_weight(lam)
    lam = tuple(field.coerce(c) for c in lam)
    spaces = {(0,) * rs.rank: [(0,) * (2 * rs.npos + rs.rank)]}
    for beta in shapovalov.q_plus(rs, cutoff):
        spaces[beta] = list(shapovalov.lower_basis(rs, beta))
    return HWModule(rs, field, lam, "verma", cutoff, spaces, None)


def build_irreducible(lam0, cutoff, rs):
    """Quotient of the Verma by the kernel of the form, degree by degree.
    The coset basis is the earliest monomial complement of the kernel."""
    lam0 = tuple(Fraction(c) for c in lam0)
    if cutoff is None:
        cutoff = _default_cutoff(lam0, rs)
    ker = shapovalov.kernel(lam0, cutoff, rs)
    spaces = {(0,) * rs.rank: [(0,) * (2 * rs.npos + rs.rank)]}
    for beta in shapovalov.q_plus(rs, cutoff):
        full = shapovalov.lower_basis(rs, beta)
        kvecs = ker.blocks.get(beta, [])
        if not kvecs:
            spaces[beta] = list(full)
            continue
        chosen = []
        rows = [list(v) for v in kvecs]
        rank0 = linalg.rank(QQ, rows)
        for j, m in enumerate(full):
            unit = [Fraction(0)] * len(full)
            unit[j] = Fraction(1)
            if linalg.rank(QQ, rows + [unit]) > rank0:
                rows.append(unit)
                rank0 += 1
                chosen.append(m)
        spaces[beta] = chosen
    return HWModule(rs, QQ, lam0, "irreducible", cutoff, spaces, ker)


def contravariant_form(mod):
    """Blocks of the induced form on the coset bases; each block must be
    nondegenerate (a singular block signals a kernel mismatch)."""
    if mod.kind != "irreducible":
        raise ValueError("the contravariant form lives on irreducible quotients")
    out = {}
    for beta in mod.betas:
        if sum(beta) == 0 or not mod.spaces[beta]:
            continue
        blk = shapovalov.shapovalov_block(beta, mod.lam, mod.rs)
        full = blk.basis
        idx = [full.index(m) for m in mod.spaces[beta]]
        matrix = [[blk.matrix[i][j] for j in idx] for i in idx]
        try:
            linalg.invert(mod.field, matrix)
        except ValueError:
            raise AssertionError(
                "degenerate contravariant block at %r: kernel mismatch" % (beta,))
        out[beta] = (list(mod.spaces[beta]), matrix)
    return out


def is_singular_vector(xi, mod):
    """xi is a list of ((beta, coefficient vector), function) pairs inside
    module (x) functions; true when every simple raising generator kills it
    for the combined action (module slot plus left regular slot)."""
    rs = mod.rs
    for i in range(rs.rank):
        simple = tuple(1 if j == i else 0 for j in range(rs.rank))
        letter = (KX, rs.root_index[simple])
        e_elem = mod.alg.letter_elem(letter)
        acc = {}

        def add(beta, vec, f):
            for k, c in enumerate(vec):
                if mod.field.is_zero(c):
                    continue
                key = (beta, k)
                cur = acc.get(key)
                scaled = f.scale(c)
                acc[key] = scaled if cur is None else cur.add(scaled)

        for (beta, vec), f in xi:
            img = mod.act_elem(e_elem, beta, vec)
            for tb, tv in img.items():
                add(tb, tv, f)
            add(beta, vec, f.act_left(e_elem))
        for f in acc.values():
            if not f.is_zero_function():
                return False
    return True
