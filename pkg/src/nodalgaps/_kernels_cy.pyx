# cython: language_level=3
"""Cython twin of _kernels_py.

Entries are arbitrary-precision Python ints, so the arithmetic itself stays
at the object level; the win comes from C-level loop control and indexing.
Behaviour must match _kernels_py exactly.
"""

BACKEND = "cython"


def det_int(rows):
    """Determinant of a square matrix of Python ints (Bareiss elimination)."""
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef list m = [list(r) for r in rows]
    cdef list mk, mi
    cdef Py_ssize_t k, i, j
    for r in m:
        if len(r) != n:
            raise ValueError("det_int requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        mk = m[k]
        if mk[k] == 0:
            for i in range(k + 1, n):
                if (<list>m[i])[k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
            mk = m[k]
        pkk = mk[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (pkk * mi[j] - mik * mk[j]) // prev
            mi[k] = 0
        prev = pkk
    return sign * (<list>m[n - 1])[n - 1]


def row_echelon_int(rows):
    """Fraction-free row echelon form of an integer matrix.

    Returns (pivot_cols, echelon_rows); see _kernels_py.row_echelon_int.
    """
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols = len(m[0]) if nrows else 0
    cdef list pivots = []
    cdef list mr, mi
    cdef Py_ssize_t c, i, j, r = 0
    cdef Py_ssize_t pr
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if (<list>m[i])[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        mr = m[r]
        p = mr[c]
        for i in range(r + 1, nrows):
            mi = m[i]
            mic = mi[c]
            for j in range(c + 1, ncols):
                mi[j] = (p * mi[j] - mic * mr[j]) // prev
            mi[c] = 0
        pivots.append(c)
        prev = p
        r += 1
    return pivots, m
