"""Exact linear algebra over the scalar tower.

Matrices with Fraction or QuadScalar entries are routed through the row
reduction kernel (compiled if available, pure Python otherwise); matrices
with polynomial or rational-function entries go through a generic
fraction-based elimination.

Select the backend explicitly with QUIVERGEOM_PURE=1 in the environment.
"""

from __future__ import annotations

import os
from fractions import Fraction

from . import _rowred_py
from .scalars import QuadScalar, inverse, is_zero, quad

if os.environ.get("QUIVERGEOM_PURE"):
    _kernel = _rowred_py
    BACKEND = "pure"
else:
    try:
        from . import _rowred as _kernel  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _kernel = _rowred_py
        BACKEND = "pure"


def _classify(rows):
    """0 = rational entries, 1 = quadratic field entries, 2 = generic."""
    kind = 0
    d = None
    for row in rows:
        for v in row:
            if isinstance(v, (int, Fraction)):
                continue
            if isinstance(v, QuadScalar):
                kind = max(kind, 1)
                if d is None:
                    d = v.d
                elif d != v.d:
                    return 2, None
            else:
                return 2, None
    return kind, d


def _to_int_rows(rows, ncols):
    out = []
    for row in rows:
        den = 1
        for v in row:
            f = Fraction(v)
            den = den * f.denominator // _gcd(den, f.denominator)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def _to_quad_rows(rows, ncols, d):
    out = []
    for row in rows:
        den = 1
        comps = []
        for v in row:
            if isinstance(v, QuadScalar):
                comps.append((v.a, v.b))
            else:
                comps.append((Fraction(v), Fraction(0)))
        for a, b in comps:
            den = den * a.denominator // _gcd(den, a.denominator)
            den = den * b.denominator // _gcd(den, b.denominator)
        flat = []
        for a, b in comps:
            flat.append(int(a * den))
            flat.append(int(b * den))
        out.append(flat)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class Echelon:
    """Reduced row echelon data with field-valued back substitution."""

    def __init__(self, pivots, rows, ncols):
        self.pivots = list(pivots)
        self.rows = rows  # list of callables? no: list of field rows
        self.ncols = ncols

    @property
    def rank(self):
        return len(self.pivots)

    def free_columns(self):
        pset = set(self.pivots)
        return [c for c in range(self.ncols) if c not in pset]

    def nullspace(self):
        """Basis of the right null space; one vector per free column."""
        basis = []
        for f in self.free_columns():
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for r, c in enumerate(self.pivots):
                val = self.rows[r][f]
                if not is_zero(val):
                    v[c] = -val
            basis.append(v)
        return basis


def echelon(rows, ncols=None):
    """Fully reduced echelon form; rows normalised to pivot value 1."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return Echelon([], [], ncols)
    kind, d = _classify(rows)
    if kind == 0:
        pivots, out = _kernel.echelon_int(_to_int_rows(rows, ncols), ncols)
        field_rows = []
        for r, c in enumerate(pivots):
            p = out[r][c]
            field_rows.append([Fraction(v, p) for v in out[r]])
        return Echelon(pivots, field_rows, ncols)
    if kind == 1:
        pivots, out = _kernel.echelon_quad(_to_quad_rows(rows, ncols, d), ncols, d)
        field_rows = []
        for r, c in enumerate(pivots):
            p = out[r][2 * c]  # pivot is rational by construction
            field_rows.append([quad(Fraction(out[r][2 * j], p), Fraction(out[r][2 * j + 1], p), d) for j in range(ncols)])
        return Echelon(pivots, field_rows, ncols)
    return _generic_echelon(rows, ncols)


def _generic_echelon(rows, ncols):
    work = [list(r) for r in rows if not all(is_zero(v) for v in r)]
    pivots = []
    r = 0
    for col in range(ncols):
        best = -1
        best_nnz = -1
        for i in range(r, len(work)):
            if not is_zero(work[i][col]):
                nnz = sum(1 for v in work[i] if not is_zero(v))
                if best < 0 or nnz < best_nnz:
                    best, best_nnz = i, nnz
        if best < 0:
            continue
        work[r], work[best] = work[best], work[r]
        pinv = inverse(work[r][col])
        work[r] = [v * pinv for v in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i == r:
                continue
            e = work[i][col]
            if is_zero(e):
                continue
            work[i] = [a - e * b for a, b in zip(work[i], prow)]
        pivots.append(col)
        r += 1
    out = [row for row in work[: len(pivots)]]
    return Echelon(pivots, out, ncols)


def rank(rows, ncols=None):
    return echelon(rows, ncols).rank


def nullspace(rows, ncols=None):
    return echelon(rows, ncols).nullspace()


def nullity(rows, ncols):
    if not rows:
        return ncols
    return ncols - echelon(rows, ncols).rank


def solve_affine(rows, rhs):
    """General solution of A x = b.

    Returns (particular, nullspace_basis) or None when inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    ech = echelon(aug, ncols + 1)
    if ncols in ech.pivots:
        return None
    part = [Fraction(0)] * ncols
    for r, c in enumerate(ech.pivots):
        part[c] = ech.rows[r][ncols]
    hom = echelon(rows, ncols)
    return part, hom.nullspace()


# ---------------------------------------------------------------------------
# dense helpers for small matrices over any field scalar


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = Fraction(0)
            for t in range(k):
                a = A[i][t]
                b = B[t][j]
                if not is_zero(a) and not is_zero(b):
                    s = s + a * b
            row.append(s)
        out.append(row)
    return out


def mat_inverse(A):
    """Inverse of a square matrix over any field scalar; None if singular."""
    n = len(A)
    aug = [list(A[i]) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    ech = _generic_echelon(aug, 2 * n)
    if len(ech.pivots) < n or ech.pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in ech.rows[:n]]


def determinant(A):
    """Fraction-free style determinant via generic elimination."""
    n = len(A)
    work = [list(r) for r in A]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for i in range(col, n):
            if not is_zero(work[i][col]):
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        p = work[col][col]
        det = det * p
        pinv = inverse(p)
        for i in range(col + 1, n):
            e = work[i][col]
            if is_zero(e):
                continue
            f = e * pinv
            work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return det


def charpoly(A):
    """Coefficients [1, c1, ..., cn] of det(xI - A) via Leverrier-Faddeev."""
    n = len(A)
    coeffs = [Fraction(1)]
    M = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        M = mat_mul(A, M)
        tr = Fraction(0)
        for i in range(n):
            tr = tr + M[i][i]
        c = -tr * Fraction(1, k)
        coeffs.append(c)
        for i in range(n):
            M[i][i] = M[i][i] + c
    return coeffs


def poly_eval(coeffs, x):
    out = Fraction(0)
    for c in coeffs:
        out = out * x + c
    return out


def _divisors(n):
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
        k += 1
    return sorted(out)


def rational_roots(coeffs):
    """Rational roots (with multiplicity) of a monic Fraction polynomial.

    Returns (roots, remaining_coeffs) after deflation.
    """
    coeffs = list(coeffs)
    roots = []
    # peel zero roots
    while len(coeffs) > 1 and coeffs[-1] == 0:
        roots.append(Fraction(0))
        coeffs.pop()
    while len(coeffs) > 1:
        den = 1
        for c in coeffs:
            den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in coeffs]
        lead, tail = ints[0], ints[-1]
        if tail == 0:
            roots.append(Fraction(0))
            coeffs.pop()
            continue
        found = None
        for p in _divisors(tail):
            for q in _divisors(lead):
                for sign in (1, -1):
                    cand = Fraction(sign * p, q)
                    if poly_eval(coeffs, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        # synthetic division by (x - found)
        new = [coeffs[0]]
        for c in coeffs[1:-1]:
            new.append(c + new[-1] * found)
        coeffs = new
    return roots, coeffs


def quadratic_roots(coeffs, d=None):
    """Roots of a monic quadratic in Q or Q(sqrt d); None if outside."""
    if len(coeffs) != 3:
        return None
    _, b, c = coeffs
    disc = b * b - 4 * c
    if disc == 0:
        r = -b / 2
        return [r, r]
    if disc > 0:
        # rational square?
        num, den = disc.numerator, disc.denominator
        rn = _isqrt(num)
        rd = _isqrt(den)
        if rn * rn == num and rd * rd == den:
            s = Fraction(rn, rd)
            return [(-b + s) / 2, (-b - s) / 2]
        if d is not None:
            # disc = d * t^2 with t rational?
            t2 = disc / d
            num, den = t2.numerator, t2.denominator
            rn, rd = _isqrt(num), _isqrt(den)
            if t2 > 0 and rn * rn == num and rd * rd == den:
                t = Fraction(rn, rd)
                s = quad(0, t, d)
                half = Fraction(1, 2)
                return [(-b + s) * half, (-b - s) * half]
    return None


def _isqrt(n):
    if n < 0:
        return 0
    x = int(n**0.5)
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x
