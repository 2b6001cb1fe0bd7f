"""Concrete fat point schemes: a multiplicity layout plus point coordinates."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidSchemeError, PointNotInSupportError
from .forms import PointPair, normalize_projective
from .grid import MultiplicityGrid


def default_points(n):
    """n distinct points of P1: [1:0], [1:1], [1:2], ... (normalized)."""
    return tuple(normalize_projective((1, k)) for k in range(n))


@dataclass(frozen=True)
class FatPointScheme:
    """Multiplicities with coordinates assigned to every row and column line.

    Unlike MultiplicityGrid, all-zero rows or columns are tolerated here:
    they appear when a point is dropped, and simply mean the line carries
    no point of the support.
    """

    multiplicities: tuple
    row_points: tuple
    col_points: tuple

    def __post_init__(self):
        mult = tuple(tuple(int(x) for x in row) for row in self.multiplicities)
        if not mult or not mult[0]:
            raise InvalidSchemeError("a scheme needs at least one row and one column")
        b = len(mult[0])
        for row in mult:
            if len(row) != b:
                raise InvalidSchemeError("multiplicity rows have unequal lengths")
            if any(x < 0 for x in row):
                raise InvalidSchemeError("multiplicities must be nonnegative")
        rp = tuple(normalize_projective(pt) for pt in self.row_points)
        cp = tuple(normalize_projective(pt) for pt in self.col_points)
        if len(rp) != len(mult):
            raise InvalidSchemeError("expected %d row points, got %d" % (len(mult), len(rp)))
        if len(cp) != b:
            raise InvalidSchemeError("expected %d column points, got %d" % (b, len(cp)))
        if len(set(rp)) != len(rp):
            raise InvalidSchemeError("first-factor coordinates collide")
        if len(set(cp)) != len(cp):
            raise InvalidSchemeError("second-factor coordinates collide")
        object.__setattr__(self, "multiplicities", mult)
        object.__setattr__(self, "row_points", rp)
        object.__setattr__(self, "col_points", cp)

    @classmethod
    def from_grid(cls, grid, row_points=None, col_points=None):
        mult = grid.m if isinstance(grid, MultiplicityGrid) else tuple(tuple(r) for r in grid)
        if row_points is None:
            row_points = default_points(len(mult))
        if col_points is None:
            col_points = default_points(len(mult[0]))
        return cls(mult, row_points, col_points)

    @property
    def a(self):
        return len(self.multiplicities)

    @property
    def b(self):
        return len(self.multiplicities[0])

    def multiplicity(self, i, j):
        if not (0 <= i < self.a and 0 <= j < self.b):
            raise IndexError(
                "point index (%d, %d) outside the %d x %d layout" % (i, j, self.a, self.b)
            )
        return self.multiplicities[i][j]

    def support(self):
        """(i, j, multiplicity) for every supported point, row-major."""
        return [
            (i, j, m)
            for i, row in enumerate(self.multiplicities)
            for j, m in enumerate(row)
            if m
        ]

    def point(self, i, j):
        return PointPair(self.row_points[i], self.col_points[j])

    def drop(self, i, j):
        """The same scheme with the multiplicity at (i, j) lowered by one."""
        m = self.multiplicity(i, j)
        if m == 0:
            raise PointNotInSupportError("point (%d, %d) has multiplicity zero" % (i, j))
        rows = [list(r) for r in self.multiplicities]
        rows[i][j] = m - 1
        return FatPointScheme(tuple(tuple(r) for r in rows), self.row_points, self.col_points)

    def transpose(self):
        return FatPointScheme(tuple(zip(*self.multiplicities)), self.col_points, self.row_points)

    def length(self):
        """Scheme length: the sum of m(m+1)/2 over the support."""
        return sum(m * (m + 1) // 2 for _, _, m in self.support())
