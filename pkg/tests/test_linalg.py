"""Row reduction kernels (compiled vs pure), nullspaces and spectra."""

import random
from fractions import Fraction

from quivergeom import _rowred_py
from quivergeom import linalg as L
from quivergeom.scalars import is_zero, quad, ratio, sqrt_d, variable


def _compiled():
    try:
        from quivergeom import _rowred

        return _rowred
    except ImportError:
        return None


def test_backends_agree_int():
    comp = _compiled()
    if comp is None:
        return
    rng = random.Random(0)
    for _ in range(200):
        n, m = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.choice([0, 0, 0, 1, -1, 2, -3]) for _ in range(m)] for _ in range(n)]
        assert _rowred_py.echelon_int([r[:] for r in rows], m) == comp.echelon_int([r[:] for r in rows], m)


def test_backends_agree_quad():
    comp = _compiled()
    if comp is None:
        return
    rng = random.Random(1)
    for _ in range(150):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.choice([0, 0, 1, -1, 2]) for _ in range(2 * m)] for _ in range(n)]
        assert _rowred_py.echelon_quad([r[:] for r in rows], m, 3) == comp.echelon_quad([r[:] for r in rows], m, 3)


def test_nullspace_annihilates():
    rng = random.Random(2)
    for _ in range(80):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)] for _ in range(n)]
        basis = L.nullspace(rows, m)
        for v in basis:
            for r in rows:
                assert sum(a * b for a, b in zip(r, v)) == 0
        assert len(basis) == m - L.rank(rows, m)


def test_nullspace_quad_entries():
    s3 = sqrt_d(3)
    rows = [[1 + s3, 2, 0], [Fraction(1, 2), s3, 1], [1 + s3, 2, 0]]
    assert L.rank(rows, 3) == 2
    for v in L.nullspace(rows, 3):
        for r in rows:
            assert is_zero(sum(a * b for a, b in zip(r, v)))


def test_generic_echelon_ratscalar():
    x = variable("x")
    rows = [[x, Fraction(1), Fraction(1)], [x * x, x, x]]
    assert L.echelon(rows, 3).rank == 1  # the second row is x times the first
    rows2 = [[x, Fraction(1), Fraction(0)], [Fraction(0), x, ratio(Fraction(1), x)]]
    assert L.echelon(rows2, 3).rank == 2


def test_solve_affine():
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    part, hom = L.solve_affine(rows, [Fraction(3), Fraction(1)])
    assert part == [Fraction(2), Fraction(1)]
    assert hom == []
    assert L.solve_affine([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]], [Fraction(0), Fraction(1)]) is None


def test_charpoly_and_roots():
    A = [[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]]
    assert L.charpoly(A) == [1, -5, 6]
    roots, rest = L.rational_roots([Fraction(1), Fraction(-5), Fraction(6)])
    assert sorted(roots) == [2, 3] and rest == [Fraction(1)]
    qr = L.quadratic_roots([Fraction(1), Fraction(0), Fraction(-3)], d=3)
    assert qr is not None and {str(r) for r in qr} == {"sqrt(3)", "-sqrt(3)"}
    assert L.quadratic_roots([Fraction(1), Fraction(0), Fraction(-5)], d=3) is None


def test_mat_inverse_determinant():
    A = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    Ainv = L.mat_inverse(A)
    assert L.mat_mul(A, Ainv) == [[1, 0], [0, 1]]
    assert L.determinant(A) == 1
    assert L.mat_inverse([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]) is None
