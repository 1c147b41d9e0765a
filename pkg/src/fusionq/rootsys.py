"""Root systems and Chevalley bases for the supported semisimple types.

Conventions, fixed once for the whole package:

* Cartan matrix entries ``a[i][j] = <alpha_j, alpha_i^vee>``, so a weight in
  fundamental coordinates pairs against a simple coroot by reading off one
  coordinate, and a root ``beta = sum m_j alpha_j`` pairs by
  ``<beta, alpha_i^vee> = sum_j a[i][j] m_j``.
* Positive roots are enumerated by string closure, sorted by (height, coords).
* Root vectors are normalized step by step: for every non-simple gamma the
  pair (alpha, beta) with alpha + beta = gamma and alpha minimal is used to
  set ``X_gamma = [X_alpha, X_beta] / (p+1)`` with p the length of the
  descending alpha-string through beta, and ``Y_gamma = -[Y_alpha, Y_beta] /
  (p+1)``.  This is the standard extraspecial-pair convention; it makes all
  structure constants integers and the transpose involution swap X_gamma and
  Y_gamma on the nose.
* The structure constants are computed inside a faithful matrix realization
  of each simple factor (sl(n+1), so(2n+1), sp(2n)) and then read back as
  exact integers; the test suite checks closure, antisymmetry and the Jacobi
  identity on every basis triple.

G2 is supported at the root-combinatorics level only (roots, pairings,
genericity); it has no Chevalley structure constants here, so the enveloping
algebra machinery rejects it.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .scalars import QQ

# letter kinds, in PBW order
KY, KH, KX = 0, 1, 2

_SUPPORTED_FACTORS = {
    "A1": ("A", 1), "A2": ("A", 2), "A3": ("A", 3),
    "B2": ("B", 2), "B3": ("B", 3),
    "C2": ("C", 2), "C3": ("C", 3),
    "G2": ("G", 2),
}

_MAX_RANK = 3


class UnsupportedAlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrix scaffolding for the simple factors
# ---------------------------------------------------------------------------

def _unit_matrix(dim, i, j, c=1):
    m = [[Fraction(0)] * dim for _ in range(dim)]
    m[i][j] = Fraction(c)
    return m


def _madd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mscale(c, a):
    return [[Fraction(c) * x for x in row] for row in a]


def _mmul(a, b):
    n = len(a)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            c = a[i][k]
            if c:
                for j in range(n):
                    if b[k][j]:
                        out[i][j] += c * b[k][j]
    return out


def _mbracket(a, b):
    ab = _mmul(a, b)
    ba = _mmul(b, a)
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(ab, ba)]


def _mtrans(a):
    return [list(col) for col in zip(*a)]


def _factor_cartan(series, n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    if series == "B" and n >= 2:
        a[n - 1][n - 2] = -2      # <alpha_{n-1}, alpha_n^vee> = -2
    elif series == "C" and n >= 2:
        a[n - 2][n - 1] = -2      # <alpha_n, alpha_{n-1}^vee> = -2
    elif series == "G":
        a[0][1] = -1
        a[1][0] = -3
    return a


def _factor_generators(series, n):
    """(dim, e-list, f-list) of simple generator matrices, or None for G2."""
    if series == "A":
        dim = n + 1
        es = [_unit_matrix(dim, i, i + 1) for i in range(n)]
        fs = [_unit_matrix(dim, i + 1, i) for i in range(n)]
        return dim, es, fs
    if series == "C":
        dim = 2 * n
        es, fs = [], []
        for i in range(n - 1):
            es.append(_madd(_unit_matrix(dim, i, i + 1),
                            _unit_matrix(dim, n + i + 1, n + i, -1)))
        es.append(_unit_matrix(dim, n - 1, 2 * n - 1))
        for e in es:
            fs.append(_mtrans(e))
        return dim, es, fs
    if series == "B":
        dim = 2 * n + 1
        es, fs = [], []
        for i in range(1, n):  # long simple roots eps_i - eps_{i+1}
            es.append(_madd(_unit_matrix(dim, i - 1, i),
                            _unit_matrix(dim, dim - i - 1, dim - i, -1)))
        es.append(_madd(_unit_matrix(dim, n - 1, n),
                        _unit_matrix(dim, n, n + 1, -1)))
        for i, e in enumerate(es):
            f = _mtrans(e)
            if i == n - 1:  # short root: rescale so [e,f] is the coroot
                f = _mscale(2, f)
            fs.append(f)
        return dim, es, fs
    return None


# ---------------------------------------------------------------------------
# root enumeration
# ---------------------------------------------------------------------------

def _enumerate_positive_roots(cartan):
    rank = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(rank):
                if beta == simple[i]:
                    continue  # twice a root is never a root
                p = 0
                while _sub_simple(beta, i, p + 1) in roots:
                    p += 1
                pairing = sum(cartan[i][j] * beta[j] for j in range(rank))
                if p - pairing >= 1:
                    cand = tuple(beta[j] + (1 if j == i else 0) for j in range(rank))
                    if cand not in roots:
                        roots.add(cand)
                        new.append(cand)
        frontier = new
    # canonical order: height first, then earliest simple roots first
    return sorted(roots, key=lambda r: (sum(r), tuple(-c for c in r)))


def _sub_simple(beta, i, k):
    out = list(beta)
    out[i] -= k
    if out[i] < 0:
        return None
    return tuple(out)


def _symmetrizer(cartan):
    """Smallest positive integers d with d_i a_ij = d_j a_ji."""
    rank = len(cartan)
    d = [None] * rank
    for start in range(rank):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(rank):
                if i != j and cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                    stack.append(j)
    # scale each connected component to smallest positive integers
    den = 1
    for x in d:
        den = den * x.denominator // _igcd(den, x.denominator)
    d = [x * den for x in d]
    g = 0
    for x in d:
        g = _igcd(g, x.numerator)
    return tuple(Fraction(x, g) for x in d)


def _igcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# the RootSystem object
# ---------------------------------------------------------------------------

class RootSystem:
    """Immutable root-system data plus the Chevalley bracket table."""

    def __init__(self, label, cartan, positive_roots, d, bracket,
                 rep_matrices, rep_dim):
        self.label = label
        self.rank = len(cartan)
        self.cartan = tuple(tuple(row) for row in cartan)
        self.positive_roots = tuple(positive_roots)
        self.npos = len(positive_roots)
        self.root_index = {r: k for k, r in enumerate(positive_roots)}
        self.d = d
        self.rho = (Fraction(1),) * self.rank
        self.bracket = bracket          # dict[(letter, letter)] -> {letter: Fraction}
        self.rep_matrices = rep_matrices  # dict[letter] -> matrix (faithful rep)
        self.rep_dim = rep_dim
        self.coroot_coords = tuple(self._coroot(r) for r in positive_roots)
        self._caches = {}

    # -- basic combinatorics -------------------------------------------------
    def height(self, beta):
        return sum(beta)

    def is_positive_root(self, beta):
        return tuple(beta) in self.root_index

    def _coroot(self, beta):
        dbeta = Fraction(0)
        for i in range(self.rank):
            for j in range(self.rank):
                dbeta += Fraction(beta[i] * beta[j]) * self.d[i] * self.cartan[i][j]
        dbeta = dbeta / 2
        coords = tuple(Fraction(beta[i]) * self.d[i] / dbeta for i in range(self.rank))
        assert all(c.denominator == 1 for c in coords), "coroot must be integral"
        return coords

    def letters(self):
        out = [(KY, k) for k in range(self.npos)]
        out += [(KH, i) for i in range(self.rank)]
        out += [(KX, k) for k in range(self.npos)]
        return out

    def letter_weight(self, letter):
        """Root-lattice weight of a basis letter (X positive, Y negative)."""
        kind, idx = letter
        if kind == KH:
            return (0,) * self.rank
        root = self.positive_roots[idx]
        sign = 1 if kind == KX else -1
        return tuple(sign * c for c in root)

    def simple_root_pairing(self, beta, i):
        """<beta, alpha_i^vee> for beta in root-lattice coordinates."""
        return sum(self.cartan[i][j] * beta[j] for j in range(self.rank))

    def require_bracket(self):
        if self.bracket is None:
            raise UnsupportedAlgebraError(
                "structure constants are not available for %s (root data only)"
                % self.label)

    def structure_constant(self, a, b):
        """N(alpha,beta) with [X_a, X_b] = N X_{a+b}, for positive roots a,b."""
        self.require_bracket()
        ka, kb = self.root_index[tuple(a)], self.root_index[tuple(b)]
        total = tuple(x + y for x, y in zip(a, b))
        if total not in self.root_index:
            return Fraction(0)
        kt = self.root_index[total]
        return self.bracket.get(((KX, ka), (KX, kb)), {}).get((KX, kt), Fraction(0))

    def cache(self, name, factory):
        if name not in self._caches:
            self._caches[name] = factory()
        return self._caches[name]

    def trace_form(self, xa, xb):
        """Trace form Tr(ab) in the stored faithful representation; the
        arguments are coefficient dicts over letters."""
        if self.rep_matrices is None:
            raise UnsupportedAlgebraError("no matrix realization for %s" % self.label)
        ma = _lincomb(self.rep_matrices, xa, self.rep_dim)
        mb = _lincomb(self.rep_matrices, xb, self.rep_dim)
        prod = _mmul(ma, mb)
        return sum(prod[i][i] for i in range(self.rep_dim))

    def to_json(self):
        sc = None
        if self.bracket is not None:
            sc = [
                {"alpha": list(a), "beta": list(b),
                 "n": str(self.structure_constant(a, b))}
                for a in self.positive_roots for b in self.positive_roots
                if tuple(x + y for x, y in zip(a, b)) in self.root_index
            ]
        return {
            "type": self.label,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "rho": [str(c) for c in self.rho],
            "structure_constants": sc,
        }

    def __repr__(self):
        return "RootSystem(%s)" % self.label


def _lincomb(mats, coeffs, dim):
    out = [[Fraction(0)] * dim for _ in range(dim)]
    for letter, c in coeffs.items():
        m = mats[letter]
        for i in range(dim):
            for j in range(dim):
                if m[i][j]:
                    out[i][j] += c * m[i][j]
    return out


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

_ROOT_SYSTEM_CACHE = {}


def build_root_system(label):
    """Build (and cache) the root system for a type label such as 'A2',
    'B2' or 'A1xA1'."""
    label = label.strip()
    if label in _ROOT_SYSTEM_CACHE:
        return _ROOT_SYSTEM_CACHE[label]
    factors = []
    for part in label.split("x"):
        if part not in _SUPPORTED_FACTORS:
            raise UnsupportedAlgebraError("unsupported algebra type %r" % part)
        factors.append(_SUPPORTED_FACTORS[part])
    rank = sum(n for _, n in factors)
    if rank > _MAX_RANK:
        raise UnsupportedAlgebraError("total rank %d exceeds the desk-scale limit %d"
                                      % (rank, _MAX_RANK))

    # assemble the Cartan matrix block-diagonally
    cartan = [[0] * rank for _ in range(rank)]
    offset = 0
    gens = []
    dims = []
    have_matrices = True
    for series, n in factors:
        block = _factor_cartan(series, n)
        for i in range(n):
            for j in range(n):
                cartan[offset + i][offset + j] = block[i][j]
        g = _factor_generators(series, n)
        if g is None:
            have_matrices = False
        else:
            dims.append(g[0])
            gens.append(g)
        offset += n

    positive_roots = _enumerate_positive_roots(cartan)
    d = _symmetrizer(cartan)

    bracket = None
    rep_matrices = None
    rep_dim = None
    if have_matrices:
        rep_dim = sum(dims)
        es, fs = _embed_generators(gens, dims, rep_dim)
        rep_matrices = _build_basis_matrices(cartan, positive_roots, es, fs, rep_dim)
        bracket = _bracket_table(rep_matrices, rep_dim, positive_roots, len(cartan))

    rs = RootSystem(label, cartan, positive_roots, d, bracket, rep_matrices, rep_dim)
    _ROOT_SYSTEM_CACHE[label] = rs
    return rs


def _embed_generators(gens, dims, total):
    es, fs = [], []
    pos = 0
    for (dim, fes, ffs), _ in zip(gens, dims):
        for e, f in zip(fes, ffs):
            es.append(_embed(e, pos, total))
            fs.append(_embed(f, pos, total))
        pos += dim
    return es, fs


def _embed(m, pos, total):
    out = [[Fraction(0)] * total for _ in range(total)]
    for i, row in enumerate(m):
        for j, c in enumerate(row):
            if c:
                out[pos + i][pos + j] = c
    return out


def _build_basis_matrices(cartan, positive_roots, es, fs, dim):
    """Matrices for every Chevalley basis letter, higher root vectors via
    the extraspecial-pair recursion."""
    rank = len(cartan)
    index = {r: k for k, r in enumerate(positive_roots)}
    xs = [None] * len(positive_roots)
    ys = [None] * len(positive_roots)
    for i in range(rank):
        simple = tuple(1 if j == i else 0 for j in range(rank))
        xs[index[simple]] = es[i]
        ys[index[simple]] = fs[i]
    for k, gamma in enumerate(positive_roots):
        if xs[k] is not None:
            continue
        alpha, beta, p = _extraspecial_pair(positive_roots, index, gamma)
        ka, kb = index[alpha], index[beta]
        xs[k] = _mscale(Fraction(1, p + 1), _mbracket(xs[ka], xs[kb]))
        ys[k] = _mscale(Fraction(-1, p + 1), _mbracket(ys[ka], ys[kb]))
    mats = {}
    for k in range(len(positive_roots)):
        mats[(KX, k)] = xs[k]
        mats[(KY, k)] = ys[k]
    for i in range(rank):
        mats[(KH, i)] = _mbracket(es[i], fs[i])
    return mats


def _extraspecial_pair(positive_roots, index, gamma):
    """Minimal alpha (in the canonical order) with alpha, gamma-alpha both
    positive roots; returns (alpha, gamma-alpha, p)."""
    for alpha in positive_roots:
        beta = tuple(g - a for g, a in zip(gamma, alpha))
        if any(c < 0 for c in beta) or beta not in index:
            continue
        p = 0
        while True:
            down = tuple(b - (p + 1) * a for b, a in zip(beta, alpha))
            if any(c < 0 for c in down) or down not in index:
                break
            p += 1
        return alpha, beta, p
    raise AssertionError("no additive decomposition for %r" % (gamma,))


def _bracket_table(mats, dim, positive_roots, rank):
    letters = [(KY, k) for k in range(len(positive_roots))]
    letters += [(KH, i) for i in range(rank)]
    letters += [(KX, k) for k in range(len(positive_roots))]
    flat = {l: [c for row in mats[l] for c in row] for l in letters}
    basis_rows = [flat[l] for l in letters]
    # transpose once for repeated solves
    bt = linalg.transpose(basis_rows)
    table = {}
    for a in letters:
        for b in letters:
            if a == b:
                continue
            br = _mbracket(mats[a], mats[b])
            vec = [c for row in br for c in row]
            if all(c == 0 for c in vec):
                continue
            sol = linalg.solve_right(QQ, bt, vec)
            if sol is None:
                raise AssertionError("bracket does not close on the basis")
            entry = {}
            for l, c in zip(letters, sol):
                if c:
                    assert c.denominator == 1, "non-integer structure constant"
                    entry[l] = c
            table[(a, b)] = entry
    return table


# ---------------------------------------------------------------------------
# pairings and genericity
# ---------------------------------------------------------------------------

def pair(lam, beta, rs):
    """<lam, beta^vee> for a weight in fundamental coordinates and a
    positive root beta."""
    beta = tuple(beta)
    if beta not in rs.root_index:
        raise ValueError("%r is not a positive root of %s" % (beta, rs.label))
    coroot = rs.coroot_coords[rs.root_index[beta]]
    if len(lam) != rs.rank:
        raise ValueError("weight must have %d coordinates" % rs.rank)
    acc = None
    for c, x in zip(coroot, lam):
        term = c * x
        acc = term if acc is None else acc + term
    return acc


def genericity_report(lam, rs):
    """Positive roots beta with <lam+rho, beta^vee> a positive integer.
    Empty report means every Shapovalov block at desk degrees is
    nonsingular."""
    lam = tuple(Fraction(c) for c in lam)
    shifted = tuple(c + r for c, r in zip(lam, rs.rho))
    bad = []
    for beta in rs.positive_roots:
        v = pair(shifted, beta, rs)
        if v.denominator == 1 and v >= 1:
            bad.append(beta)
    return tuple(bad)
