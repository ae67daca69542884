"""Backend selection and shared wrappers for the integer linear algebra core.

The compiled extension is preferred when importable; NODALGAPS_PURE=1 forces
the pure-Python implementation.  Everything downstream goes through this
module so both backends see identical call sites.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import gcd

if os.environ.get("NODALGAPS_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
det_int = _impl.det_int
row_echelon_int = _impl.row_echelon_int


def rank_int(rows: list[list[int]]) -> int:
    """Rank of an integer matrix."""
    pivots, _ = row_echelon_int(rows)
    return len(pivots)


def clear_row_denominators(row) -> list[int]:
    """Scale a row of Fractions by a positive integer to integer entries."""
    mult = 1
    for q in row:
        d = q.denominator
        mult = mult // gcd(mult, d) * d
    return [int(q * mult) for q in row]


def normalize_int_vector(vec: list[int]) -> tuple[int, ...]:
    """Divide by the gcd and make the first nonzero entry positive."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g == 0:
        return tuple(vec)
    first = next(v for v in vec if v != 0)
    if first < 0:
        g = -g
    return tuple(v // g for v in vec)


def nullspace_int(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the right nullspace of an integer matrix.

    Returns primitive integer vectors, one per free column, ordered by the
    free column index.  Back-substitution runs over Fractions; the echelon
    reduction itself is the fraction-free kernel.
    """
    pivots, ech = row_echelon_int(rows)
    rank = len(pivots)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            pc = pivots[i]
            row = ech[i]
            s = Fraction(0)
            for j in range(pc + 1, ncols):
                if row[j] and x[j]:
                    s += Fraction(row[j]) * x[j]
            x[pc] = -s / row[pc]
        basis.append(normalize_int_vector(clear_row_denominators(x)))
    return basis
