"""Graded Shapovalov pairing, block matrices and kernels.

The pairing is ``pi_lam(x (x) y) = (S(x) y)_0(lam)`` for x in U(n+) and y in
U(n-); the bilinear form on U(n-) is ``(omega(x) y)_0(lam)`` with omega the
transpose involution.  With that choice every graded block is a symmetric
matrix whose entries are polynomials in the weight coordinates, computed
once as elements of U(h) and evaluated per weight afterwards.

The degree -beta block is indexed by the monomial basis of U(n-)[-beta] in
a fixed order (ascending flat exponent tuples), so kernels, echelon bases
and golden outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from . import linalg
from .scalars import QQ, FunctionField, RatFun
from .uea import PBWElem, UEA


def field_of_weight(lam):
    """QQ for rational coordinates, the common function field otherwise."""
    for c in lam:
        if isinstance(c, RatFun):
            return FunctionField(c.ring.vars)
    return QQ


def q_plus(rs, cutoff):
    """All nonzero elements of the positive root lattice cone with height
    at most cutoff, in the canonical (height, earliest-root-first) order."""
    rng = [range(cutoff + 1)] * rs.rank
    out = [beta for beta in iter_product(*rng)
           if 0 < sum(beta) <= cutoff]
    return sorted(out, key=lambda b: (sum(b), tuple(-c for c in b)))


def lower_basis(rs, beta):
    """Monomial basis of U(n-)[-beta]: flat monomial tuples, ascending."""
    key = ("lower_basis", tuple(beta))
    cache = rs.cache("lower_basis", dict)
    if key not in cache:
        roots = rs.positive_roots
        nl = 2 * rs.npos + rs.rank
        solutions = []

        def walk(idx, rem, exps):
            if all(c == 0 for c in rem):
                mono = [0] * nl
                for k, e in enumerate(exps):
                    mono[k] = e
                solutions.append(tuple(mono))
                return
            if idx == len(roots):
                return
            r = roots[idx]
            k = 0
            while True:
                nxt = tuple(c - k * x for c, x in zip(rem, r))
                if any(c < 0 for c in nxt):
                    break
                walk(idx + 1, nxt, exps + [k])
                k += 1

        walk(0, tuple(beta), [])
        cache[key] = sorted(solutions)
    return cache[key]


def _universal_block(rs, beta):
    """Shapovalov block with entries in U(h), independent of the weight."""
    cache = rs.cache("universal_shapovalov", dict)
    beta = tuple(beta)
    if beta not in cache:
        alg = UEA(rs, QQ)
        basis = lower_basis(rs, beta)
        raised = [alg.chevalley_involution(PBWElem(alg, {m: Fraction(1)}))
                  for m in basis]
        rows = []
        for xi in raised:
            row = []
            for m in basis:
                prod = xi * PBWElem(alg, {m: Fraction(1)})
                row.append(alg.project_zero(prod))
            rows.append(row)
        cache[beta] = (basis, rows)
    return cache[beta]


@dataclass
class ShapovalovBlock:
    beta: tuple
    basis: list          # flat monomial tuples for U(n-)[-beta]
    matrix: list         # square matrix of scalars
    field: object

    def det(self):
        return linalg.det(self.field, self.matrix)

    def dim(self):
        return len(self.basis)


def pairing_pi(alg, x, y, lam):
    """pi_lam(x (x) y) = (S(x) y)_0(lam); zero across mismatched weights."""
    if not x.in_upper():
        raise ValueError("first pairing argument must lie in U(n+)")
    if not y.in_lower():
        raise ValueError("second pairing argument must lie in U(n-)")
    val = alg.project_zero(alg.antipode(x) * y)
    return alg.evaluate_at(val, lam)


def shapovalov_block(beta, lam, rs, cutoff=None):
    """The symmetric graded block of the form at weight lam."""
    beta = tuple(beta)
    if cutoff is not None and sum(beta) > cutoff:
        raise ValueError("height of %r exceeds the cutoff %d" % (beta, cutoff))
    field = field_of_weight(lam)
    basis, uh_rows = _universal_block(rs, beta)
    alg = UEA(rs, QQ)
    matrix = [[field.coerce(alg.evaluate_at(e, lam)) for e in row]
              for row in uh_rows]
    return ShapovalovBlock(beta, list(basis), matrix, field)


@dataclass
class KernelSpace:
    """Nullspaces of the graded Shapovalov blocks at a rational weight.

    ``blocks[beta]`` is a list of coefficient vectors over
    ``lower_basis(rs, beta)``; only degrees with a nonzero kernel appear.
    The upper-side kernel is obtained by theta-transport of these elements.
    """
    lambda0: tuple
    cutoff: int
    blocks: dict
    rs: object
    side: str = "lower"

    def dim(self, beta):
        return len(self.blocks.get(tuple(beta), []))

    def elements(self, alg, beta=None):
        """Kernel elements as PBW elements (lower side)."""
        betas = [tuple(beta)] if beta is not None else sorted(self.blocks)
        out = []
        for b in betas:
            basis = lower_basis(self.rs, b)
            for vec in self.blocks.get(b, []):
                terms = {m: c for m, c in zip(basis, vec) if c}
                out.append(PBWElem(alg, terms))
        return out

    def upper_elements(self, alg, beta=None):
        """theta-transported kernel elements, spanning the upper kernel."""
        return [alg.theta(e) for e in self.elements(alg, beta)]

    def is_empty(self):
        return not self.blocks


def kernel(lam0, cutoff, rs):
    """Per-degree exact nullspaces of the form at a rational weight."""
    lam0 = tuple(Fraction(c) for c in lam0)
    blocks = {}
    for beta in q_plus(rs, cutoff):
        blk = shapovalov_block(beta, lam0, rs)
        ns = linalg.nullspace(QQ, blk.matrix, ncols=blk.dim())
        if ns:
            blocks[beta] = ns
    return KernelSpace(lam0, cutoff, blocks, rs)


def _delta_span(rs, delta):
    """Positive roots supported on the simple-root subset delta."""
    out = set()
    for beta in rs.positive_roots:
        if all(beta[i] == 0 or i in delta for i in range(rs.rank)):
            out.add(beta)
    return out


def kernel_generators_integral(lam0, delta, rs):
    """Generators Y_alpha^(n_alpha + 1) of the kernel for weights that are
    nonnegative integral on the subset delta of simple roots and
    non-critical on every other positive root."""
    lam0 = tuple(Fraction(c) for c in lam0)
    delta = sorted(set(delta))
    for i in delta:
        n = lam0[i]
        if n.denominator != 1 or n < 0:
            raise ValueError("weight is not nonnegative integral on simple root %d" % (i + 1))
    span = _delta_span(rs, delta)
    shifted = tuple(c + r for c, r in zip(lam0, rs.rho))
    from .rootsys import pair
    for beta in rs.positive_roots:
        if beta in span:
            continue
        v = pair(shifted, beta, rs)
        if v.denominator == 1 and v >= 1:
            raise ValueError(
                "weight pairs integrally with %r outside the chosen subset" % (beta,))
    alg = UEA(rs, QQ)
    gens = []
    for i in delta:
        n = int(lam0[i])
        simple = tuple(1 if j == i else 0 for j in range(rs.rank))
        gens.append(alg.Y(rs.root_index[simple], power=n + 1))
    return gens


def left_ideal_blocks(gens, cutoff, rs):
    """Degreewise row-echelon bases of the left U(n-)-ideal generated by
    the given lower elements, over the monomial bases."""
    alg = gens[0].alg if gens else UEA(rs, QQ)
    out = {}
    for beta in q_plus(rs, cutoff):
        basis = lower_basis(rs, beta)
        index = {m: i for i, m in enumerate(basis)}
        rows = []
        for g in gens:
            gw = g.weight()
            need = tuple(b + w for b, w in zip(beta, gw))  # beta - |weight of g|
            if any(c < 0 for c in need):
                continue
            if all(c == 0 for c in need):
                mults = [alg.one()]
            else:
                mults = [PBWElem(alg, {m: Fraction(1)})
                         for m in lower_basis(rs, need)]
            for m in mults:
                prod = m * g
                vec = [QQ.zero] * len(basis)
                for mono, c in prod.terms.items():
                    vec[index[mono]] = c
                rows.append(vec)
        if rows:
            red, pivots = linalg.rref(QQ, rows)
            red = [r for r in red if any(x != 0 for x in r)]
            if red:
                out[beta] = red
    return out


def kernel_matches_ideal(lam0, delta, cutoff, rs):
    """Degree-by-degree comparison of the kernel with the left ideal
    generated by the integral kernel generators; returns a report dict."""
    gens = kernel_generators_integral(lam0, delta, rs)
    ker = kernel(lam0, cutoff, rs)
    ideal = left_ideal_blocks(gens, cutoff, rs) if gens else {}
    report = {}
    ok = True
    for beta in q_plus(rs, cutoff):
        dk = ker.dim(beta)
        di = len(ideal.get(beta, []))
        same = dk == di
        if same and dk:
            same = all(linalg.in_row_span(QQ, ideal[beta], v)
                       for v in ker.blocks[beta])
        report[beta] = {"kernel_dim": dk, "ideal_dim": di, "equal": same}
        ok = ok and same
    return ok, report


def kernel_sum_check(lam0, lam_list, lam_prime, cutoff, rs):
    """Check K(lam0) = sum_i K(lam_i) per degree, and the inclusion
    K(lam') in the sum; returns (ok, per-degree table)."""
    k0 = kernel(lam0, cutoff, rs)
    ks = [kernel(l, cutoff, rs) for l in lam_list]
    kp = kernel(lam_prime, cutoff, rs) if lam_prime is not None else None
    table = {}
    ok = True
    for beta in q_plus(rs, cutoff):
        rows = []
        for k in ks:
            rows.extend(k.blocks.get(beta, []))
        sum_dim = linalg.rank(QQ, rows) if rows else 0
        d0 = k0.dim(beta)
        equal = sum_dim == d0
        if equal and rows:
            equal = all(linalg.in_row_span(QQ, rows, v)
                        for v in k0.blocks.get(beta, []))
        included = True
        if kp is not None:
            for v in kp.blocks.get(beta, []):
                if not rows or not linalg.in_row_span(QQ, rows, v):
                    included = False
                    break
        table[beta] = {"k0_dim": d0, "sum_dim": sum_dim,
                       "equal": equal, "prime_included": included}
        ok = ok and equal and included
    return ok, table
