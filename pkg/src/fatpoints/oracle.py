"""Brute-force verification engine built on exact linear algebra.

Membership of a bidegree-(r, s) form in the ideal of a fat point is
encoded by the vanishing of all mixed partials of total order below the
multiplicity, taken in the affine chart at the point.  Stacking those
rows over the support turns every bigraded ideal piece into a single
kernel problem; Hilbert functions, separator checks and the minimal
generator degrees of the one-point quotient module all come out of ranks
of such matrices.

Rank computations are exact.  A cheap modular rank (a lower bound) is
accepted only when it meets an independently valid upper bound coming
from the monotonicity of Hilbert functions or the matrix shape; in every
other case the code falls back to fraction-free elimination.
"""

from __future__ import annotations

from collections import Counter, OrderedDict
from dataclasses import dataclass

from .errors import PointNotInSupportError, WindowError, WindowInsufficiencyError
from .exactlinalg import (
    kernel_basis,
    primitive_vector,
    rank,
    rank_mod_p,
    reduced_row_basis,
)
from .forms import (
    BihomForm,
    PointPair,
    X0,
    X1,
    Y0,
    Y1,
    line_through_first,
    line_through_second,
    point_chart,
    scaled_derivative_table,
)
from .scheme import FatPointScheme


@dataclass(frozen=True)
class HilbertTable:
    """Values H(r, s) on the rectangle 0..R x 0..S, as values[r][s]."""

    values: tuple

    def __post_init__(self):
        vals = tuple(tuple(int(x) for x in row) for row in self.values)
        if not vals or not vals[0]:
            raise WindowError("a Hilbert table needs a nonempty window")
        width = len(vals[0])
        if any(len(row) != width for row in vals):
            raise WindowError("Hilbert table rows have unequal lengths")
        object.__setattr__(self, "values", vals)

    @property
    def window(self):
        return (len(self.values) - 1, len(self.values[0]) - 1)

    def value(self, r, s):
        return self.values[r][s]

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.values)


@dataclass(frozen=True)
class IdealPieceBasis:
    """Basis (primitive integer coefficient vectors) of one ideal piece."""

    bidegree: tuple
    basis: tuple


def _orders(m):
    """Derivative orders (a, b) with a + b < m, grouped by total order."""
    return [(alpha, t - alpha) for t in range(m) for alpha in range(t + 1)]


class SchemeOracle:
    """Exact-rank engine for one scheme, with per-bidegree caching.

    An instance is cheap to build; ranks, condition matrices and dropped
    sub-schemes are cached as they are computed, so reusing one oracle
    across several queries on the same scheme saves a lot of work.
    Instances are not safe for concurrent mutation from several threads.
    """

    def __init__(self, scheme: FatPointScheme):
        self.scheme = scheme
        self._points = [
            (i, j, m, point_chart(scheme.row_points[i]), point_chart(scheme.col_points[j]))
            for (i, j, m) in scheme.support()
        ]
        self._nrows = sum(m * (m + 1) // 2 for _, _, m, _, _ in self._points)
        self._rank = {}
        self._rows_cache = OrderedDict()
        self._rows_cap = 24
        self._dropped = {}

    # -- condition matrices -------------------------------------------------

    def condition_matrix(self, r, s):
        """Scaled integer derivative-condition rows of every supported point."""
        key = (r, s)
        cached = self._rows_cache.get(key)
        if cached is not None:
            self._rows_cache.move_to_end(key)
            return cached
        rows = []
        for (_, _, m, xch, ych) in self._points:
            xtabs = [scaled_derivative_table(xch, alpha, r) for alpha in range(m)]
            ytabs = [scaled_derivative_table(ych, beta, s) for beta in range(m)]
            for alpha, beta in _orders(m):
                xa = xtabs[alpha]
                yb = ytabs[beta]
                rows.append(
                    [xa[e0] * yb[f0] for e0 in range(r, -1, -1) for f0 in range(s, -1, -1)]
                )
        self._rows_cache[key] = rows
        if len(self._rows_cache) > self._rows_cap:
            self._rows_cache.popitem(last=False)
        return rows

    def _point_top_rows(self, i, j, r, s):
        """The m scaled rows of total order m-1 at point (i, j), fixed order."""
        m = self.scheme.multiplicity(i, j)
        xch = point_chart(self.scheme.row_points[i])
        ych = point_chart(self.scheme.col_points[j])
        rows = []
        for alpha in range(m):
            beta = m - 1 - alpha
            xa = scaled_derivative_table(xch, alpha, r)
            yb = scaled_derivative_table(ych, beta, s)
            rows.append(
                [xa[e0] * yb[f0] for e0 in range(r, -1, -1) for f0 in range(s, -1, -1)]
            )
        return rows

    # -- Hilbert function ----------------------------------------------------

    def hilbert_value(self, r, s):
        """H(r, s): the rank of the stacked conditions in bidegree (r, s)."""
        if r < 0 or s < 0:
            return 0
        key = (r, s)
        got = self._rank.get(key)
        if got is not None:
            return got
        n = (r + 1) * (s + 1)
        if self._nrows == 0:
            self._rank[key] = 0
            return 0
        # H is nondecreasing in each argument and a step adds at most one
        # short side of monomials; together with the matrix shape these
        # bounds certify most cells without elimination.
        lo = 0
        up = min(n, self._nrows)
        left = self._rank.get((r - 1, s))
        if left is not None:
            lo = left
            up = min(up, left + s + 1)
        down = self._rank.get((r, s - 1))
        if down is not None:
            lo = max(lo, down)
            up = min(up, down + r + 1)
        if lo < up:
            rows = self.condition_matrix(r, s)
            lo = max(lo, rank_mod_p(rows, stop_at=up))
            if lo < up:
                lo = rank(rows, stop_at=up)
        self._rank[key] = lo
        return lo

    def ideal_piece_dim(self, r, s):
        """dim of the bidegree-(r, s) piece of the scheme's ideal."""
        if r < 0 or s < 0:
            return 0
        return (r + 1) * (s + 1) - self.hilbert_value(r, s)

    def hilbert_function(self, window):
        R, S = window
        if R < 0 or S < 0:
            raise WindowError("window bounds must be nonnegative")
        values = [[self.hilbert_value(r, s) for s in range(S + 1)] for r in range(R + 1)]
        return HilbertTable(tuple(tuple(row) for row in values))

    def ideal_piece_basis(self, r, s):
        """Kernel basis of the stacked conditions: the ideal piece itself."""
        if r < 0 or s < 0:
            return []
        return kernel_basis(self.condition_matrix(r, s), ncols=(r + 1) * (s + 1))

    # -- separator verification ----------------------------------------------

    def is_separator(self, i, j, form):
        """Whether ``form`` separates point (i, j): it vanishes to full order
        at every other point, to order exactly multiplicity-1 at (i, j)."""
        if not isinstance(form, BihomForm) or form.is_zero():
            raise ValueError("a separator candidate must be a nonzero bihomogeneous form")
        m = self.scheme.multiplicity(i, j)
        if m == 0:
            raise PointNotInSupportError("point (%d, %d) has multiplicity zero" % (i, j))
        r, s = form.bidegree
        vec = primitive_vector(form.coefficient_vector())
        for (pi, pj, pm, xch, ych) in self._points:
            if (pi, pj) == (i, j):
                continue
            for alpha, beta in _orders(pm):
                row = self._single_row(xch, ych, alpha, beta, r, s)
                if sum(u * w for u, w in zip(row, vec)):
                    return False
        xch = point_chart(self.scheme.row_points[i])
        ych = point_chart(self.scheme.col_points[j])
        top_nonzero = False
        for alpha, beta in _orders(m):
            row = self._single_row(xch, ych, alpha, beta, r, s)
            dot = sum(u * w for u, w in zip(row, vec))
            if alpha + beta < m - 1:
                if dot:
                    return False
            elif dot:
                top_nonzero = True
        return top_nonzero

    @staticmethod
    def _single_row(xch, ych, alpha, beta, r, s):
        xa = scaled_derivative_table(xch, alpha, r)
        yb = scaled_derivative_table(ych, beta, s)
        return [xa[e0] * yb[f0] for e0 in range(r, -1, -1) for f0 in range(s, -1, -1)]

    # -- minimal generator degrees of the one-point quotient ------------------

    def dropped(self, i, j):
        key = (i, j)
        sub = self._dropped.get(key)
        if sub is None:
            sub = SchemeOracle(self.scheme.drop(i, j))
            self._dropped[key] = sub
        return sub

    def quotient_piece_dim(self, i, j, r, s):
        """dim of the (r, s) piece of  I(dropped scheme) / I(scheme)."""
        if r < 0 or s < 0:
            return 0
        return self.hilbert_value(r, s) - self.dropped(i, j).hilbert_value(r, s)

    def _codim(self, sub, m, r, s):
        # m minus the quotient piece dimension; the full space m at negative
        # bidegrees, where the quotient piece is zero by convention
        if r < 0 or s < 0:
            return m
        return m - self.hilbert_value(r, s) + sub.hilbert_value(r, s)

    def _intersection_dim(self, sub, i, j, m, r, s, lo, hi):
        """dim of the combinations of the point's top-order conditions that
        degenerate at both (r-1, s) and (r, s-1); squeezed between lo and hi."""
        na = r * (s + 1) if r >= 1 else 0
        nb = (r + 1) * s if s >= 1 else 0
        if na + nb == 0:
            return m
        ra = sub.hilbert_value(r - 1, s) if na else 0
        rb = sub.hilbert_value(r, s - 1) if nb else 0
        rows = []
        if na:
            pad = [0] * nb
            rows.extend(row + pad for row in sub.condition_matrix(r - 1, s))
        if nb:
            pad = [0] * na
            rows.extend(pad + row for row in sub.condition_matrix(r, s - 1))
        top_a = self._point_top_rows(i, j, r - 1, s) if na else [[]] * m
        top_b = self._point_top_rows(i, j, r, s - 1) if nb else [[]] * m
        for k in range(m):
            rows.append(list(top_a[k]) + list(top_b[k]))
        up = min(ra + rb + (m - lo), len(rows), na + nb)
        lb = max(ra + rb + (m - hi), 0)
        if lb < up:
            lb = max(lb, rank_mod_p(rows, stop_at=up))
            if lb < up:
                lb = rank(rows, stop_at=up)
        return m - lb + ra + rb

    def generator_degree_counts(self, i, j, window):
        """Counts of minimal generators of I(dropped)/I(scheme) per bidegree.

        In each bidegree the count is the dimension of the quotient piece
        minus the dimension of the image of multiplication by the four
        variables from the two lower bidegrees, phrased through the
        degeneracy spaces of the point's top-order conditions (which only
        takes ranks, never explicit kernels).
        """
        m = self.scheme.multiplicity(i, j)
        if m == 0:
            raise PointNotInSupportError("point (%d, %d) has multiplicity zero" % (i, j))
        sub = self.dropped(i, j)
        R, S = window
        counts = {}
        for r in range(R + 1):
            for s in range(S + 1):
                dc = self._codim(sub, m, r, s)
                da = self._codim(sub, m, r - 1, s)
                db = self._codim(sub, m, r, s - 1)
                lo = max(dc, da + db - m)
                hi = min(da, db)
                inter = lo if lo == hi else self._intersection_dim(sub, i, j, m, r, s, lo, hi)
                g = inter - dc
                if g < 0:
                    raise ArithmeticError("negative generator count: bound bookkeeping broken")
                if g:
                    counts[(r, s)] = g
        return counts

    def minimal_generator_degrees(self, i, j):
        """Multiset of bidegrees of minimal generators of I(dropped)/I(scheme).

        The search window is the coarse bound (sum of row maxima + 1, sum of
        column maxima + 1); the scan actually runs on a window enlarged by
        two in each direction, and any generator found only in the margin
        raises WindowInsufficiencyError instead of being silently dropped.
        """
        mult = self.scheme.multiplicities
        base_r = sum(max(row) for row in mult) + 1
        base_s = sum(max(col) for col in zip(*mult)) + 1
        counts = self.generator_degree_counts(i, j, (base_r + 2, base_s + 2))
        stray = sorted(k for k in counts if k[0] > base_r or k[1] > base_s)
        if stray:
            raise WindowInsufficiencyError(
                "generator degrees %s fall outside the search window (0..%d, 0..%d)"
                % (stray, base_r, base_s)
            )
        return Counter(counts)


# -- one-shot wrappers --------------------------------------------------------


def ideal_piece_dim(scheme, bidegree):
    return SchemeOracle(scheme).ideal_piece_dim(*bidegree)


def hilbert_function(scheme, window):
    return SchemeOracle(scheme).hilbert_function(window)


def is_separator(scheme, point, form):
    return SchemeOracle(scheme).is_separator(point[0], point[1], form)


def minimal_generator_degrees(scheme, point):
    return SchemeOracle(scheme).minimal_generator_degrees(point[0], point[1])


def ideal_piece_basis_by_span(point, m, bidegree):
    """Basis of the bidegree piece of the m-th power of a point's ideal,
    built from the spanning products L^u R^v * (complementary monomials),
    u + v = m, and reduced to independence by exact elimination.

    ``point`` is a PointPair (or a pair of coordinate pairs); this is the
    cross-check counterpart of the derivative-condition encoding.
    """
    if not isinstance(point, PointPair):
        point = PointPair(*point)
    dx, dy = bidegree
    lp = line_through_first(point.p)
    lq = line_through_second(point.q)
    vectors = []
    for u in range(m + 1):
        v = m - u
        if u > dx or v > dy:
            continue
        base = lp ** u * lq ** v
        rem_x, rem_y = dx - u, dy - v
        for e0 in range(rem_x, -1, -1):
            for f0 in range(rem_y, -1, -1):
                mono = BihomForm((rem_x, rem_y), {(e0, rem_x - e0, f0, rem_y - f0): 1})
                vectors.append((base * mono).coefficient_vector())
    basis = reduced_row_basis(vectors) if vectors else ()
    return IdealPieceBasis((dx, dy), tuple(basis))


def ruling_zero_predicate(mults, bidegree):
    """True when the truncated-sum profile of a single-ruling scheme forces
    the ideal piece at ``bidegree`` to vanish: (i, j) dominates no (l, c_l),
    with c_l the sum of the multiplicities truncated at level l."""
    i, j = bidegree
    mults = tuple(int(x) for x in mults)
    if not mults or any(x < 1 for x in mults):
        raise ValueError("a ruling scheme needs multiplicities >= 1")
    for level in range(max(mults)):
        c = sum(x - level for x in mults if x > level)
        if i >= level and j >= c:
            return False
    return True


def generator_degree_counts_reference(scheme, point, window):
    """Slow reference for the generator counts, computed literally:
    kernel bases of both ideals, then the rank of the span of
    x-multiples, y-multiples and the smaller ideal's piece.

    Only intended for cross-checking the production scan on small schemes.
    """
    i, j = point
    oz = SchemeOracle(scheme)
    sub = SchemeOracle(scheme.drop(i, j))
    counts = {}
    R, S = window
    for r in range(R + 1):
        for s in range(S + 1):
            big = sub.ideal_piece_basis(r, s)
            small = oz.ideal_piece_basis(r, s)
            q = len(big) - len(small)
            if q == 0:
                continue
            spanning = [list(v) for v in small]
            if r >= 1:
                for v in sub.ideal_piece_basis(r - 1, s):
                    f = BihomForm.from_coefficient_vector((r - 1, s), v)
                    spanning.append(list((f * X0).coefficient_vector()))
                    spanning.append(list((f * X1).coefficient_vector()))
            if s >= 1:
                for v in sub.ideal_piece_basis(r, s - 1):
                    f = BihomForm.from_coefficient_vector((r, s - 1), v)
                    spanning.append(list((f * Y0).coefficient_vector()))
                    spanning.append(list((f * Y1).coefficient_vector()))
            image = (rank(spanning) if spanning else 0) - len(small)
            g = q - image
            if g:
                counts[(r, s)] = g
    return counts
