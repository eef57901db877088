"""Pure-Python row reduction kernels over Z and Z[sqrt d].

Reference implementation; quivergeom._rowred is the Cython translation
with identical output.  Rows are inserted one at a time into a maintained
reduced basis (leftmost-pivot rule), so redundant rows are discarded as
soon as they reduce to zero; this is what makes the large, highly
redundant constraint systems built by the moduli module cheap.

The result is the reduced row echelon form with every row scaled to
primitive integer entries and a positive pivot, which is unique.
"""

from bisect import insort
from math import gcd


def _strip_int(row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v if v > 0 else -v)
            if g == 1:
                return
    if g > 1:
        for j in range(len(row)):
            row[j] //= g


def _combine_int(row, prow, col, ncols):
    """row := primitive(row * p - e * prow) clearing row[col]."""
    e = row[col]
    p = prow[col]
    g = gcd(e, p)
    mp = p // g
    me = e // g
    if mp == 1:
        for j in range(ncols):
            if prow[j]:
                row[j] -= me * prow[j]
    else:
        for j in range(ncols):
            row[j] = row[j] * mp - me * prow[j]
    _strip_int(row)


def echelon_int(rows, ncols):
    """Reduced row echelon form over Z; returns (pivot_cols, rows)."""
    pivcols = []  # sorted pivot columns
    basis = {}  # pivot col -> row
    for incoming in rows:
        row = list(incoming)
        for col in pivcols:
            if row[col]:
                _combine_int(row, basis[col], col, ncols)
        piv = -1
        for j in range(ncols):
            if row[j]:
                piv = j
                break
        if piv < 0:
            continue
        if row[piv] < 0:
            for j in range(ncols):
                row[j] = -row[j]
        _strip_int(row)
        for col in pivcols:
            brow = basis[col]
            if brow[piv]:
                _combine_int(brow, row, piv, ncols)
        insort(pivcols, piv)
        basis[piv] = row
    return pivcols, [basis[c] for c in pivcols]


def _strip_and_sign_quad(row, ca):
    _strip_int(row)
    if row[ca] < 0:
        for j in range(len(row)):
            row[j] = -row[j]


def _combine_quad(row, prow, ca, cb, ncols, d):
    """row := primitive(row * p - (e) * prow) clearing the pair at (ca, cb).

    prow's pivot is rational: prow[cb] == 0, p = prow[ca].
    """
    ea = row[ca]
    eb = row[cb]
    p = prow[ca]
    for j in range(ncols):
        pa = prow[2 * j]
        pb = prow[2 * j + 1]
        a = row[2 * j]
        b = row[2 * j + 1]
        row[2 * j] = a * p - (ea * pa + d * eb * pb)
        row[2 * j + 1] = b * p - (ea * pb + eb * pa)
    _strip_int(row)


def echelon_quad(rows, ncols, d):
    """Reduced row echelon form over Z[sqrt d].

    rows: flat lists of 2*ncols ints, entry j = (row[2j], row[2j+1]) for
    a + b*sqrt(d).  Pivot entries are normalised to positive integers by
    multiplying the pivot row with the pivot's conjugate.
    """
    pivcols = []
    basis = {}
    for incoming in rows:
        row = list(incoming)
        for col in pivcols:
            if row[2 * col] or row[2 * col + 1]:
                _combine_quad(row, basis[col], 2 * col, 2 * col + 1, ncols, d)
        piv = -1
        for j in range(ncols):
            if row[2 * j] or row[2 * j + 1]:
                piv = j
                break
        if piv < 0:
            continue
        ca, cb = 2 * piv, 2 * piv + 1
        if row[cb]:
            qa, qb = row[ca], -row[cb]
            for j in range(ncols):
                a, b = row[2 * j], row[2 * j + 1]
                row[2 * j] = a * qa + d * b * qb
                row[2 * j + 1] = a * qb + b * qa
        _strip_and_sign_quad(row, ca)
        for col in pivcols:
            brow = basis[col]
            if brow[ca] or brow[cb]:
                _combine_quad(brow, row, ca, cb, ncols, d)
        insort(pivcols, piv)
        basis[piv] = row
    return pivcols, [basis[c] for c in pivcols]
