"""Multiplicity grids on P1 x P1 and the combinatorial Cohen-Macaulay test.

A fat point scheme supported on an a x b grid of points is described by
the a x b matrix of multiplicities (0 marks an absent point).  Everything
here is purely combinatorial: the truncation-tuple system of the grid,
the total-order test for the ACM property, canonical reordering of rows
and columns, and the relative multiplicity bounds that every ACM grid
satisfies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidGridError, NotACMError


def tuple_geq(u, v):
    """True when every entry of ``u`` is >= the matching entry of ``v``."""
    if len(u) != len(v):
        raise ValueError(
            "cannot compare tuples of different lengths (%d vs %d)" % (len(u), len(v))
        )
    return all(a >= b for a, b in zip(u, v))


@dataclass(frozen=True)
class MultiplicityGrid:
    """Rectangular grid of point multiplicities; 0 marks an absent point.

    Every row and every column must contain a supported point: an all-zero
    line carries no label and should be trimmed from the input instead.
    """

    m: tuple

    def __post_init__(self):
        rows = tuple(tuple(x for x in row) for row in self.m)
        object.__setattr__(self, "m", rows)
        if not rows:
            raise InvalidGridError("grid has no rows")
        b = len(rows[0])
        if b == 0:
            raise InvalidGridError("grid has no columns")
        for i, row in enumerate(rows):
            if len(row) != b:
                raise InvalidGridError(
                    "row %d has %d entries, expected %d" % (i + 1, len(row), b)
                )
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                    raise InvalidGridError(
                        "entry at row %d, column %d is not a natural number: %r"
                        % (i + 1, j + 1, x)
                    )
        for i, row in enumerate(rows):
            if not any(row):
                raise InvalidGridError("row %d is all zero; trim it from the grid" % (i + 1))
        for j in range(b):
            if not any(row[j] for row in rows):
                raise InvalidGridError("column %d is all zero; trim it from the grid" % (j + 1))

    @property
    def a(self):
        return len(self.m)

    @property
    def b(self):
        return len(self.m[0])

    def row(self, i):
        return self.m[i]

    def column(self, j):
        return tuple(row[j] for row in self.m)

    def entry(self, i, j):
        return self.m[i][j]

    def support(self):
        """(i, j) pairs of the supported points, row-major."""
        return [
            (i, j) for i, row in enumerate(self.m) for j, x in enumerate(row) if x
        ]

    def transpose(self):
        return MultiplicityGrid(tuple(zip(*self.m)))

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.m)


def build_sz(grid):
    """Truncation tuples of every row, collected with multiplicity.

    Row i contributes the tuples ((m[i][0]-h)+, ..., (m[i][b-1]-h)+) for
    h = 0, 1, ... until the tuple dies out; the all-zero tuple is not
    recorded.  The result lists the tuples row by row, h increasing, so
    its length is the sum over rows of the row maximum.
    """
    out = []
    for row in grid.m:
        for h in range(max(row)):
            out.append(tuple(x - h if x > h else 0 for x in row))
    return out


def find_incomparable(grid):
    """One incomparable pair of truncation tuples, or None if they chain.

    Distinct tuples of equal coordinate sum are always incomparable;
    otherwise sorting by decreasing sum linearizes any possible chain, so
    it is enough to compare neighbours.
    """
    tuples = sorted(set(build_sz(grid)), key=lambda t: (-sum(t), t))
    for u, v in zip(tuples, tuples[1:]):
        if sum(u) == sum(v):
            return (u, v)
        if not tuple_geq(u, v):
            return (u, v)
    return None


def is_acm(grid):
    """Whether the fat point scheme of the grid is arithmetically Cohen-Macaulay."""
    return find_incomparable(grid) is None


@dataclass(frozen=True)
class CanonicalizationResult:
    """Grid with rows and columns sorted into dominance order.

    ``row_order[k]`` is the original index of row k of ``grid`` (same for
    columns), i.e. grid.m[i][j] == original.m[row_order[i]][col_order[j]].
    """

    grid: MultiplicityGrid
    row_order: tuple
    col_order: tuple


def canonicalize(grid):
    """Sort rows and columns so that earlier lines dominate later ones.

    Requires the ACM property: dominance is then a total preorder on the
    rows and on the columns, and the (stable) sort keeps tied lines in
    their original relative order.
    """
    witness = find_incomparable(grid)
    if witness is not None:
        raise NotACMError(
            "grid is not ACM: tuples %s and %s are incomparable" % (witness[0], witness[1])
        )
    row_order = tuple(sorted(range(grid.a), key=lambda i: tuple(-x for x in grid.m[i])))
    col_order = tuple(
        sorted(range(grid.b), key=lambda j: tuple(-grid.m[i][j] for i in row_order))
    )
    new = MultiplicityGrid(
        tuple(tuple(grid.m[i][j] for j in col_order) for i in row_order)
    )
    for r1, r2 in zip(new.m, new.m[1:]):
        assert tuple_geq(r1, r2), "dominance sort failed on an ACM grid"
    for j in range(new.b - 1):
        assert tuple_geq(new.column(j), new.column(j + 1)), "dominance sort failed on an ACM grid"
    return CanonicalizationResult(new, row_order, col_order)


@dataclass(frozen=True)
class BoundViolation:
    """A failed relative multiplicity bound on a 2 x 2 subgrid (0-based indices).

    case 1: all four points present, top-left entry exceeds the bound.
    case 2: the opposite corner is absent, the top-right entry exceeds it.
    """

    case: int
    rows: tuple
    cols: tuple
    value: int
    bound: int


def check_multiplicity_bounds(grid):
    """Scan all 2 x 2 subgrids for violated relative multiplicity bounds.

    Meant for canonicalized grids, where the top-left entry of every
    subgrid dominates its row and column partners.  ACM grids never
    produce a violation; a violation therefore certifies non-ACM-ness.
    """
    out = []
    m = grid.m
    for i, k in itertools.combinations(range(grid.a), 2):
        for j, l in itertools.combinations(range(grid.b), 2):
            mij, mil, mkj, mkl = m[i][j], m[i][l], m[k][j], m[k][l]
            if mij and mil and mkj:
                if mkl:
                    bound = mil + mkj - mkl + 1
                    if mij > bound:
                        out.append(BoundViolation(1, (i, k), (j, l), mij, bound))
                else:
                    # absent corner case, with the zero multiplicity substituted
                    bound = mij + 1
                    if mil > bound:
                        out.append(BoundViolation(2, (i, k), (j, l), mil, bound))
    return out
