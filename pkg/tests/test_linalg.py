import random
from fractions import Fraction

import pytest

from fusionq import linalg
from fusionq.scalars import QQ, line_field


def frac_rows(rows):
    return [[Fraction(x) for x in r] for r in rows]


def test_rref_and_rank():
    rows = frac_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    red, pivots = linalg.rref(QQ, rows)
    assert pivots == [0, 1]
    assert linalg.rank(QQ, rows) == 2
    # pivot entries are 1 with zeros elsewhere in pivot columns
    for r, pc in enumerate(pivots):
        col = [red[i][pc] for i in range(len(red))]
        assert col[r] == 1 and all(c == 0 for i, c in enumerate(col) if i != r)


def test_nullspace_is_canonical_and_correct():
    rows = frac_rows([[1, 2, 3], [2, 4, 6]])
    ns = linalg.nullspace(QQ, rows)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(c * x for c, x in zip(row, v)) == 0 for row in rows)
    # free columns get the identity pattern, in column order
    assert ns[0][1] == 1 and ns[1][2] == 1


def test_invert_round_trip_and_singular():
    rng = random.Random(5)
    for n in (1, 2, 3, 4):
        rows = frac_rows([[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)])
        if linalg.rank(QQ, rows) < n:
            continue
        inv = linalg.invert(QQ, rows)
        assert linalg.mat_eq(QQ, linalg.mat_mul(QQ, rows, inv), linalg.identity(QQ, n))
    with pytest.raises(ValueError):
        linalg.invert(QQ, frac_rows([[1, 2], [2, 4]]))


def test_solve_right_and_span():
    rows = frac_rows([[1, 0, 1], [0, 1, 1]])
    x = linalg.solve_right(QQ, rows, [Fraction(3), Fraction(5)])
    assert [sum(c * v for c, v in zip(r, x)) for r in rows] == [3, 5]
    assert linalg.in_row_span(QQ, rows, [Fraction(1), Fraction(1), Fraction(2)])
    assert not linalg.in_row_span(QQ, rows, [Fraction(1), Fraction(1), Fraction(3)])


def test_det_matches_cofactor_expansion():
    rng = random.Random(11)

    def cofactor_det(rows):
        n = len(rows)
        if n == 1:
            return rows[0][0]
        total = Fraction(0)
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
        return total

    for n in (1, 2, 3, 4):
        for _ in range(8):
            rows = frac_rows([[Fraction(rng.randrange(-6, 7), rng.randrange(1, 3))
                               for _ in range(n)] for _ in range(n)])
            assert linalg.det(QQ, rows) == cofactor_det(rows)


def test_det_over_function_field():
    ff = line_field()
    t = ff.var("t")
    rows = [[t, ff.one], [ff.one, t]]
    assert linalg.det(ff, rows) == t * t - 1
    rows = [[t / (t + 1), ff.zero], [ff.one, 2 * t]]
    assert linalg.det(ff, rows) == 2 * t * t / (t + 1)
    assert linalg.det(ff, [[t, t], [t, t]]).is_zero()


def test_rref_over_function_field():
    ff = line_field()
    t = ff.var("t")
    rows = [[t, t * t], [ff.one, t]]
    red, pivots = linalg.rref(ff, rows)
    assert pivots == [0]
    assert red[0][1] == t
