"""Exact dense linear algebra over the scalar fields.

Matrices are lists of row lists.  Elimination uses deterministic pivoting
(first row with a nonzero entry, columns in their given order), so echelon
forms, nullspace bases and inverses are reproducible.  Determinants go
through fraction-free Bareiss elimination on cleared (integer or polynomial)
entries.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QQ, FunctionField, Poly, RatFun


def zeros(field, n, m):
    return [[field.zero for _ in range(m)] for _ in range(n)]


def identity(field, n):
    rows = zeros(field, n, n)
    for i in range(n):
        rows[i][i] = field.one
    return rows


def mat_mul(field, a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(field, n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for s in range(k):
            c = ai[s]
            if field.is_zero(c):
                continue
            bs = b[s]
            for j in range(m):
                oi[j] = oi[j] + c * bs[j]
    return out


def mat_vec(field, a, v):
    out = []
    for row in a:
        acc = field.zero
        for c, x in zip(row, v):
            if not field.is_zero(c):
                acc = acc + c * x
        out.append(acc)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_eq(field, a, b):
    return all(field.is_zero(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(field, rows):
    """Reduced row echelon form; returns (rref rows, pivot column list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][c]):
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.one / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r] + [[field.zero] * ncols for _ in range(len(mat) - r)], pivots


def rank(field, rows):
    return len(rref(field, rows)[1])


def nullspace(field, rows, ncols=None):
    """Canonical nullspace basis: one vector per free column, in column order."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(field, rows)
    pivot_set = set(pivots)
    basis = []
    for c in range(ncols):
        if c in pivot_set:
            continue
        vec = [field.zero] * ncols
        vec[c] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][c]
        basis.append(vec)
    return basis


def invert(field, rows):
    """Inverse of a square matrix; raises ValueError when singular."""
    n = len(rows)
    aug = [list(r) + list(e) for r, e in zip(rows, identity(field, n))]
    red, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [r[n:] for r in red[:n]]


def solve_right(field, rows, rhs):
    """One solution of A x = rhs, or None if inconsistent."""
    n = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def in_row_span(field, rows, vec):
    """Is vec in the row space of rows?"""
    red, pivots = rref(field, rows)
    v = list(vec)
    for r, pc in enumerate(pivots):
        if not field.is_zero(v[pc]):
            f = v[pc]
            v = [x - f * y for x, y in zip(v, red[r])]
    return all(field.is_zero(x) for x in v)


def _det_bareiss(rows, one, divexact):
    """Fraction-free determinant over an integral domain."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = one
    for k in range(n - 1):
        pr = next((i for i in range(k, n) if not _is_zero_entry(a[i][k])), None)
        if pr is None:
            return None  # zero determinant
        if pr != k:
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = divexact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev)
            a[i][k] = None
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else _neg_entry(a[n - 1][n - 1])


def _is_zero_entry(x):
    if isinstance(x, Poly):
        return x.is_zero()
    return x == 0


def _neg_entry(x):
    return -x


def det(field, rows):
    """Exact determinant.  QQ entries are cleared to integers, function-field
    entries to polynomials, then Bareiss elimination runs fraction-free."""
    n = len(rows)
    if n == 0:
        return field.one
    if isinstance(field, FunctionField):
        ring = field.ring
        cleared = []
        scale = field.one
        for row in rows:
            den = ring.one
            for x in row:
                den = den * x.den
            cleared.append([x.num * den.divexact(x.den) for x in row])
            scale = scale / RatFun(ring, den, ring.one)
        d = _det_bareiss(cleared, ring.one, lambda a, b: a.divexact(b))
        if d is None:
            return field.zero
        return scale * RatFun(ring, d, ring.one)
    # QQ: clear each row to integers
    cleared = []
    scale = Fraction(1)
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        cleared.append([int(x * den) for x in row])
        scale /= den
    d = _det_bareiss(cleared, 1, lambda a, b: a // b)
    if d is None:
        return field.zero
    return scale * d


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
