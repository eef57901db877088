# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython row reduction kernels over Z and Z[sqrt d].

Same algorithm and output as quivergeom._rowred_py (the pure reference):
incremental insertion into a reduced basis with the leftmost-pivot rule.
Entries are Python ints (arbitrary precision); Cython removes the loop
overhead.
"""

from bisect import insort
from math import gcd


cdef void _strip(list row):
    cdef object g = 0
    cdef object v
    cdef Py_ssize_t j
    for v in row:
        if v:
            g = gcd(g, v if v > 0 else -v)
            if g == 1:
                return
    if g > 1:
        for j in range(len(row)):
            row[j] //= g


cdef void _combine_int(list row, list prow, Py_ssize_t col, Py_ssize_t ncols):
    cdef object e = row[col]
    cdef object p = prow[col]
    cdef object g = gcd(e, p)
    cdef object mp = p // g
    cdef object me = e // g
    cdef Py_ssize_t j
    if mp == 1:
        for j in range(ncols):
            if prow[j] != 0:
                row[j] = row[j] - me * prow[j]
    else:
        for j in range(ncols):
            row[j] = row[j] * mp - me * prow[j]
    _strip(row)


def echelon_int(rows, Py_ssize_t ncols):
    cdef list pivcols = []
    cdef dict basis = {}
    cdef list row, brow
    cdef Py_ssize_t piv, j
    cdef object col, incoming
    for incoming in rows:
        row = list(incoming)
        for col in pivcols:
            if row[col] != 0:
                _combine_int(row, <list>basis[col], <Py_ssize_t>col, ncols)
        piv = -1
        for j in range(ncols):
            if row[j] != 0:
                piv = j
                break
        if piv < 0:
            continue
        if row[piv] < 0:
            for j in range(ncols):
                row[j] = -row[j]
        _strip(row)
        for col in pivcols:
            brow = <list>basis[col]
            if brow[piv] != 0:
                _combine_int(brow, row, piv, ncols)
        insort(pivcols, piv)
        basis[piv] = row
    return pivcols, [basis[c] for c in pivcols]


cdef void _combine_quad(list row, list prow, Py_ssize_t ca, Py_ssize_t cb, Py_ssize_t ncols, long d):
    cdef object ea = row[ca], eb = row[cb]
    cdef object p = prow[ca]
    cdef object a, b, pa, pb
    cdef Py_ssize_t j
    for j in range(ncols):
        pa = prow[2 * j]
        pb = prow[2 * j + 1]
        a = row[2 * j]
        b = row[2 * j + 1]
        row[2 * j] = a * p - (ea * pa + d * eb * pb)
        row[2 * j + 1] = b * p - (ea * pb + eb * pa)
    _strip(row)


def echelon_quad(rows, Py_ssize_t ncols, long d):
    cdef list pivcols = []
    cdef dict basis = {}
    cdef list row, brow
    cdef Py_ssize_t piv, j, ca, cb
    cdef object col, incoming, qa, qb, a, b
    for incoming in rows:
        row = list(incoming)
        for col in pivcols:
            if row[2 * <Py_ssize_t>col] != 0 or row[2 * <Py_ssize_t>col + 1] != 0:
                _combine_quad(row, <list>basis[col], 2 * <Py_ssize_t>col, 2 * <Py_ssize_t>col + 1, ncols, d)
        piv = -1
        for j in range(ncols):
            if row[2 * j] != 0 or row[2 * j + 1] != 0:
                piv = j
                break
        if piv < 0:
            continue
        ca = 2 * piv
        cb = ca + 1
        if row[cb] != 0:
            qa = row[ca]
            qb = -row[cb]
            for j in range(ncols):
                a = row[2 * j]
                b = row[2 * j + 1]
                row[2 * j] = a * qa + d * b * qb
                row[2 * j + 1] = a * qb + b * qa
        _strip(row)
        if row[ca] < 0:
            for j in range(2 * ncols):
                row[j] = -row[j]
        for col in pivcols:
            brow = <list>basis[col]
            if brow[ca] != 0 or brow[cb] != 0:
                _combine_quad(brow, row, ca, cb, ncols, d)
        insort(pivcols, piv)
        basis[piv] = row
    return pivcols, [basis[c] for c in pivcols]
