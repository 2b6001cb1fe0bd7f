"""Exact linear algebra over the rationals.

Matrices are sequences of equal-length rows with ``int`` or ``Fraction``
entries.  Everything reduces to integer arithmetic: denominators are
cleared row by row (which never changes ranks, null spaces or row
spaces) and elimination is fraction-free in the style of Bareiss, so
intermediate entries stay integral.  No floating point anywhere.

``rank_mod_p`` is a rank over GF(p), always a lower bound for the
rational rank.  Callers may accept it only when it meets an a-priori
upper bound; it never replaces an exact computation on its own.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

MOD_PRIME = 2_147_483_647

_NUMPY_THRESHOLD = 4096  # below rows*cols of this, pure python beats the numpy call


def to_int_rows(rows):
    """Rows copied as lists of ints, denominators cleared one row at a time."""
    out = []
    width = None
    for row in rows:
        row = list(row)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValueError("matrix is ragged: row lengths %d and %d" % (width, len(row)))
        denom = 1
        for x in row:
            if isinstance(x, bool) or isinstance(x, float):
                raise TypeError("matrix entries must be exact (int or Fraction)")
            if isinstance(x, Fraction):
                denom = lcm(denom, x.denominator)
            elif not isinstance(x, int):
                raise TypeError("matrix entries must be int or Fraction, got %s" % type(x).__name__)
        if denom == 1:
            out.append([x if isinstance(x, int) else x.numerator for x in row])
        else:
            out.append([int(x * denom) for x in row])
    return out


def _echelon(mat, stop_at=None):
    """Fraction-free row echelon reduction in place; returns (rank, pivot_cols).

    Every elimination step divides exactly by the previous pivot (Bareiss),
    so entries stay integral.  ``stop_at`` abandons the reduction once that
    many pivots are found, for callers that only need to confirm a bound.
    """
    nrows = len(mat)
    if nrows == 0:
        return 0, []
    ncols = len(mat[0])
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows or (stop_at is not None and r >= stop_at):
            break
        best = -1
        for i in range(r, nrows):
            v = mat[i][c]
            if v and (best < 0 or abs(v) < abs(mat[best][c])):
                best = i
                if abs(v) == 1:
                    break
        if best < 0:
            continue
        if best != r:
            mat[r], mat[best] = mat[best], mat[r]
        piv_row = mat[r]
        piv = piv_row[c]
        tail = piv_row[c + 1:]
        scale_only = piv != 1 or prev != 1
        for i in range(r + 1, nrows):
            row = mat[i]
            f = row[c]
            if f:
                row[c + 1:] = [(x * piv - f * y) // prev for x, y in zip(row[c + 1:], tail)]
            elif scale_only:
                row[c + 1:] = [(x * piv) // prev for x in row[c + 1:]]
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots


def rank(rows, stop_at=None):
    """Exact rank over the rationals (early exit once ``stop_at`` is reached)."""
    mat = to_int_rows(rows)
    if not mat or not mat[0]:
        return 0
    if len(mat) > len(mat[0]):
        mat = [list(col) for col in zip(*mat)]
    r, _ = _echelon(mat, stop_at=stop_at)
    return r


def kernel_basis(rows, ncols=None):
    """Primitive integer vectors spanning the exact right null space."""
    mat = to_int_rows(rows)
    if not mat:
        if ncols is None:
            raise ValueError("ncols is required when the matrix has no rows")
        return [tuple(int(k == i) for k in range(ncols)) for i in range(ncols)]
    n = len(mat[0])
    if ncols is not None and ncols != n:
        raise ValueError("ncols=%d does not match the row length %d" % (ncols, n))
    rk, pivots = _echelon(mat)
    pivset = set(pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivset):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for k in range(rk - 1, -1, -1):
            c = pivots[k]
            row = mat[k]
            s = Fraction(0)
            for jj in range(c + 1, n):
                if v[jj]:
                    s += row[jj] * v[jj]
            if s:
                v[c] = -s / row[c]
        basis.append(primitive_vector(v))
    return basis


def left_kernel_basis(rows):
    """Primitive integer dependency vectors w with w . rows == 0."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    if not rows[0]:
        return [tuple(int(k == i) for k in range(len(rows))) for i in range(len(rows))]
    cols = [list(col) for col in zip(*rows)]
    return kernel_basis(cols, ncols=len(rows))


def reduced_row_basis(rows):
    """Independent primitive rows spanning the same row space."""
    mat = to_int_rows(rows)
    if not mat or not mat[0]:
        return ()
    rk, _ = _echelon(mat)
    return tuple(primitive_vector(row) for row in mat[:rk])


def primitive_vector(vec):
    """Clear denominators, divide by the gcd, make the first nonzero positive."""
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in vec] if den != 1 else [int(x) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def rank_mod_p(rows, p=MOD_PRIME, stop_at=None):
    """Rank over GF(p): always <= the rational rank."""
    mat = to_int_rows(rows)
    if not mat or not mat[0]:
        return 0
    if len(mat) * len(mat[0]) >= _NUMPY_THRESHOLD:
        return _rank_mod_p_numpy(mat, p, stop_at)
    m = [[x % p for x in row] for row in mat]
    if len(m) > len(m[0]):
        m = [list(col) for col in zip(*m)]
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        if r == nrows or (stop_at is not None and r >= stop_at):
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        row_r = m[r]
        row_r[c:] = [x * inv % p for x in row_r[c:]]
        tail = row_r[c + 1:]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                row[c + 1:] = [(x - f * y) % p for x, y in zip(row[c + 1:], tail)]
                row[c] = 0
        r += 1
    return r


def _rank_mod_p_numpy(mat, p, stop_at):
    # p < 2**31, entries < p: every product below fits comfortably in int64
    a = np.array([[x % p for x in row] for row in mat], dtype=np.int64)
    if a.shape[0] < a.shape[1]:
        a = a.T.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows or (stop_at is not None and r >= stop_at):
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            idx = nzb + r + 1
            a[idx, c:] = (a[idx, c:] - below[nzb, None] * a[r, c:][None, :]) % p
        r += 1
    return r
