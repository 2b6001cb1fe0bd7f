"""Degrees and explicit forms of the minimal separators of ACM fat points.

For a supported point of an ACM scheme the degrees of a minimal set of
separators are read off two sequences of truncated multiplicity sums
(one down the point's column, one along its row); the separators
themselves are explicit products of ruling lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotACMError, PointNotInSupportError, WindowError
from .forms import ONE, line_through_first, line_through_second
from .grid import MultiplicityGrid, find_incomparable
from .oracle import HilbertTable


def _pos(n):
    return n if n > 0 else 0


@dataclass(frozen=True)
class TruncatedSums:
    """Truncated multiplicity sums through one supported point.

    a_seq[l] sums (column entry - l)+ down the point's column and
    b_seq[l] sums (row entry - l)+ along its row, for l = 0..m-1 where m
    is the point's multiplicity; both are strictly decreasing.  c_seq
    extends the row sums to l = 0..max(row)-1, the profile used by the
    single-ruling vanishing test.
    """

    a_seq: tuple
    b_seq: tuple
    c_seq: tuple


def _checked_multiplicity(grid, i, j):
    if not (0 <= i < grid.a and 0 <= j < grid.b):
        raise IndexError(
            "point index (%d, %d) outside the %d x %d grid" % (i, j, grid.a, grid.b)
        )
    m = grid.entry(i, j)
    if m == 0:
        raise PointNotInSupportError("point (%d, %d) has multiplicity zero" % (i, j))
    return m


def truncated_sums(grid, i, j):
    """Column and row truncated sums through the point in row i, column j."""
    m = _checked_multiplicity(grid, i, j)
    col = grid.column(j)
    row = grid.row(i)
    a_seq = tuple(sum(_pos(x - l) for x in col) for l in range(m))
    b_seq = tuple(sum(_pos(x - l) for x in row) for l in range(m))
    c_seq = tuple(sum(_pos(x - l) for x in row) for l in range(max(row)))
    return TruncatedSums(a_seq, b_seq, c_seq)


@dataclass(frozen=True)
class SeparatorDegreeSet:
    """Bidegrees of a minimal set of separators of one fat point.

    There are exactly multiplicity-many degrees and they form an
    antichain: listed with the first component strictly increasing, the
    second strictly decreases.
    """

    point: tuple
    multiplicity: int
    degrees: tuple


def _require_acm(grid):
    witness = find_incomparable(grid)
    if witness is not None:
        raise NotACMError(
            "grid is not ACM (tuples %s and %s are incomparable); "
            "the separator formulas need the ACM hypothesis" % witness
        )


def separator_degrees(grid, i, j):
    """Separator degrees of the point at row i, column j of an ACM grid.

    Entry l of the result is (a[m-1-l] - 1, b[l] - 1) in terms of the
    truncated sums, l = 0..m-1, sorted by first coordinate ascending.
    """
    _require_acm(grid)
    ts = truncated_sums(grid, i, j)
    m = grid.entry(i, j)
    degs = tuple((ts.a_seq[m - 1 - l] - 1, ts.b_seq[l] - 1) for l in range(m))
    return SeparatorDegreeSet((i, j), m, degs)


def ruling_separator_degrees(mults, i):
    """Separator degrees when all points share their first coordinate.

    ``mults`` are the multiplicities along the ruling; the result is
    {(l, b_l - 1) : l = 0..m-1} and agrees with ``separator_degrees`` on
    the corresponding 1 x b grid.
    """
    mults = tuple(int(x) for x in mults)
    if not mults or any(x < 1 for x in mults):
        raise ValueError("a ruling scheme needs multiplicities >= 1")
    if not 0 <= i < len(mults):
        raise IndexError("point index %d outside the ruling of length %d" % (i, len(mults)))
    m = mults[i]
    degs = tuple((l, sum(_pos(x - l) for x in mults) - 1) for l in range(m))
    return SeparatorDegreeSet((0, i), m, degs)


def separator_form_factors(grid, i, j):
    """Exponent pattern of each minimal separator as a product of lines.

    Entry l is (row_exponents, col_exponents): the l-th separator is the
    product over rows s of (line through row s)^row_exponents[s] times the
    product over columns p of (line through column p)^col_exponents[p].
    The point's own lines appear with exponents l and m-1-l, every other
    row with ((column entry) - (m-1-l))+ and every other column with
    ((row entry) - l)+.
    """
    _require_acm(grid)
    m = _checked_multiplicity(grid, i, j)
    col = grid.column(j)
    row = grid.row(i)
    out = []
    for l in range(m):
        re = tuple(
            l if s == i else _pos(col[s] - (m - l - 1)) for s in range(grid.a)
        )
        ce = tuple(
            m - l - 1 if p == j else _pos(row[p] - l) for p in range(grid.b)
        )
        out.append((re, ce))
    return out


def separator_forms(scheme, i, j):
    """Explicit minimal separators of point (i, j) as bihomogeneous forms.

    Needs concrete coordinates, hence a FatPointScheme; the l-th form has
    the l-th degree of ``separator_degrees``.  With an empty complement the
    product is the constant form of bidegree (0, 0).
    """
    grid = MultiplicityGrid(scheme.multiplicities)
    forms = []
    for re, ce in separator_form_factors(grid, i, j):
        f = ONE
        for s, e in enumerate(re):
            if e:
                f = f * line_through_first(scheme.row_points[s]) ** e
        for p, e in enumerate(ce):
            if e:
                f = f * line_through_second(scheme.col_points[p]) ** e
        forms.append(f)
    return forms


def hilbert_update(table, degrees, window=None):
    """Hilbert table after lowering the separated point's multiplicity by one.

    Subtracts, at each (r, s), the number of separator degrees dominated by
    (r, s).  ``window`` may shrink the output; asking for more than the
    input covers raises WindowError.
    """
    degs = degrees.degrees if isinstance(degrees, SeparatorDegreeSet) else [tuple(d) for d in degrees]
    R, S = table.window
    if window is not None:
        wr, ws = window
        if wr > R or ws > S:
            raise WindowError(
                "requested window (%d, %d) exceeds the table window (%d, %d)" % (wr, ws, R, S)
            )
        R, S = wr, ws
    values = tuple(
        tuple(
            table.value(r, s) - sum(1 for (c, d) in degs if c <= r and d <= s)
            for s in range(S + 1)
        )
        for r in range(R + 1)
    )
    return HilbertTable(values)
