"""Pure-Python fraction-free integer linear algebra kernels.

These are the hot inner loops of the package: every exact rank, nullspace,
resultant and pivot-valuation computation reduces to Bareiss elimination on
matrices of arbitrary-precision integers.  A compiled twin of this module
(_kernels_cy) is built when Cython is available; nodalgaps.kernels picks one
at import time.  Both implementations must stay behaviourally identical.
"""

BACKEND = "python"


def det_int(rows):
    """Determinant of a square matrix of Python ints (Bareiss elimination).

    Intermediate entries stay integral: after step k every entry is a
    (k+1)x(k+1) minor of the input, so the division by the previous pivot
    is exact.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != n:
            raise ValueError("det_int requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = m[k][k]
        mk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (pkk * mi[j] - mik * mk[j]) // prev
            mi[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1]


def row_echelon_int(rows):
    """Fraction-free row echelon form of an integer matrix.

    Returns (pivot_cols, echelon_rows).  pivot_cols is the strictly
    increasing list of pivot column indices, so len(pivot_cols) is the rank;
    echelon_rows is the eliminated integer matrix (rows below the rank are
    zero).  Pivot columns agree with those of the reduced row echelon form
    over the rationals.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        mr = m[r]
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
