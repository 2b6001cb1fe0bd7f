"""Bihomogeneous polynomials on P1 x P1 with exact rational coefficients.

Monomials are exponent tuples (e0, e1, f0, f1) for the variables
x0, x1, y0, y1.  A form of bidegree (dx, dy) only stores monomials with
e0 + e1 == dx and f0 + f1 == dy, never with a zero coefficient.
Coefficient vectors enumerate monomials with e0 descending, then f0
descending; this fixed order ties forms to the matrices built elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, perm


def _exact(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError("coefficients must be exact (int or Fraction), not %s" % type(x).__name__)
    return Fraction(x)


def normalize_projective(point):
    """Scale a P1 coordinate pair so its last nonzero coordinate is 1."""
    c0, c1 = point
    c0, c1 = _exact(c0), _exact(c1)
    if c1:
        return (c0 / c1, Fraction(1))
    if c0:
        return (Fraction(1), Fraction(0))
    raise ValueError("a projective point needs a nonzero coordinate")


@dataclass(frozen=True)
class PointPair:
    """Point of P1 x P1: one normalized coordinate pair per factor."""

    p: tuple
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", normalize_projective(self.p))
        object.__setattr__(self, "q", normalize_projective(self.q))


@dataclass(frozen=True, eq=False)
class BihomForm:
    """Bihomogeneous polynomial; zero coefficients are never stored."""

    bidegree: tuple
    coeffs: dict

    def __post_init__(self):
        dx, dy = self.bidegree
        if dx < 0 or dy < 0:
            raise ValueError("bidegree must be componentwise nonnegative")
        clean = {}
        for mono, c in self.coeffs.items():
            c = _exact(c)
            if not c:
                continue
            e0, e1, f0, f1 = mono
            if min(mono) < 0 or e0 + e1 != dx or f0 + f1 != dy:
                raise ValueError("monomial %r is not of bidegree %r" % (mono, (dx, dy)))
            clean[(e0, e1, f0, f1)] = c
        object.__setattr__(self, "bidegree", (dx, dy))
        object.__setattr__(self, "coeffs", clean)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BihomForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.bidegree == other.bidegree and self.coeffs == other.coeffs

    __hash__ = None

    def _scaled(self, c):
        c = _exact(c)
        if not c:
            return BihomForm(self.bidegree, {})
        return BihomForm(self.bidegree, {m: c * v for m, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(other)
        if not isinstance(other, BihomForm):
            return NotImplemented
        out = {}
        for (a0, a1, b0, b1), ca in self.coeffs.items():
            for (c0, c1, d0, d1), cb in other.coeffs.items():
                key = (a0 + c0, a1 + c1, b0 + d0, b1 + d1)
                prev = out.get(key)
                out[key] = ca * cb if prev is None else prev + ca * cb
        return BihomForm(
            (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1]),
            out,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(other)
        return NotImplemented

    def __neg__(self):
        return self._scaled(-1)

    def __add__(self, other):
        if not isinstance(other, BihomForm):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.bidegree != other.bidegree:
            raise ValueError(
                "cannot add forms of bidegrees %r and %r" % (self.bidegree, other.bidegree)
            )
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return BihomForm(self.bidegree, out)

    def __sub__(self, other):
        if not isinstance(other, BihomForm):
            return NotImplemented
        return self + (-other)

    def __pow__(self, n):
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def coefficient_vector(self):
        """Coefficients over the monomial basis, e0 descending then f0 descending."""
        dx, dy = self.bidegree
        zero = Fraction(0)
        get = self.coeffs.get
        return tuple(
            get((e0, dx - e0, f0, dy - f0), zero)
            for e0 in range(dx, -1, -1)
            for f0 in range(dy, -1, -1)
        )

    @classmethod
    def from_coefficient_vector(cls, bidegree, vec):
        dx, dy = bidegree
        vec = list(vec)
        if len(vec) != (dx + 1) * (dy + 1):
            raise ValueError(
                "vector of length %d does not fit bidegree %r" % (len(vec), (dx, dy))
            )
        coeffs = {}
        k = 0
        for e0 in range(dx, -1, -1):
            for f0 in range(dy, -1, -1):
                c = vec[k]
                k += 1
                if c:
                    coeffs[(e0, dx - e0, f0, dy - f0)] = c
        return cls((dx, dy), coeffs)

    def __str__(self):
        if self.is_zero():
            return "0"
        names = ("x0", "x1", "y0", "y1")
        terms = []
        for mono in sorted(self.coeffs, key=lambda m: (-m[0], -m[2])):
            c = self.coeffs[mono]
            factors = [n if e == 1 else "%s^%d" % (n, e) for n, e in zip(names, mono) if e]
            body = "*".join(factors)
            if not factors:
                terms.append(str(c))
            elif c == 1:
                terms.append(body)
            elif c == -1:
                terms.append("-" + body)
            else:
                terms.append("%s*%s" % (c, body))
        return " + ".join(terms).replace("+ -", "- ")


ONE = BihomForm((0, 0), {(0, 0, 0, 0): 1})
X0 = BihomForm((1, 0), {(1, 0, 0, 0): 1})
X1 = BihomForm((1, 0), {(0, 1, 0, 0): 1})
Y0 = BihomForm((0, 1), {(0, 0, 1, 0): 1})
Y1 = BihomForm((0, 1), {(0, 0, 0, 1): 1})


def _primitive_form(form):
    # integer coefficients with gcd 1, leading (vector-order) coefficient positive
    vec = form.coefficient_vector()
    den = 1
    for c in vec:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-v for v in ints]
            break
    return BihomForm.from_coefficient_vector(form.bidegree, ints)


def line_through_first(point):
    """The (1,0) form vanishing on {point} x P1, primitive integer coefficients."""
    p0, p1 = normalize_projective(point)
    return _primitive_form(BihomForm((1, 0), {(1, 0, 0, 0): p1, (0, 1, 0, 0): -p0}))


def line_through_second(point):
    """The (0,1) form vanishing on P1 x {point}, primitive integer coefficients."""
    q0, q1 = normalize_projective(point)
    return _primitive_form(BihomForm((0, 1), {(0, 0, 1, 0): q1, (0, 0, 0, 1): -q0}))


def point_chart(point):
    """Chart data (driver, u, v) for derivative rows at a P1 coordinate pair.

    In the affine chart containing the point the local coordinate is the
    variable whose exponent is e0 (driver 0) or e1 (driver 1), and it takes
    the value u/v at the point.
    """
    c0, c1 = normalize_projective(point)
    if c1:
        return (0, c0.numerator, c0.denominator)
    return (1, 0, 1)


def derivative_table(chart, alpha, deg):
    """alpha-th derivative of each dehomogenized monomial at the chart value,
    indexed by e0 = 0..deg.  Exact Fractions."""
    driver, u, v = chart
    tau = Fraction(u, v)
    out = []
    for e0 in range(deg + 1):
        d = e0 if driver == 0 else deg - e0
        out.append(perm(d, alpha) * tau ** (d - alpha) if d >= alpha else Fraction(0))
    return out


def scaled_derivative_table(chart, alpha, deg):
    """``derivative_table`` times v**(deg - alpha), which makes it integral.

    The scale factor depends only on the order and the degree, never on the
    monomial, so ranks, kernels and row spaces are unchanged -- and linear
    combinations of same-point rows keep the same meaning across bidegrees.
    """
    driver, u, v = chart
    out = []
    for e0 in range(deg + 1):
        d = e0 if driver == 0 else deg - e0
        out.append(perm(d, alpha) * u ** (d - alpha) * v ** (deg - d) if d >= alpha else 0)
    return out


def derivative_condition(point, order, bidegree):
    """Row of F |-> (d/dx)^a (d/dy)^b Fhat(point) over the monomial basis.

    Fhat is the dehomogenization in the affine chart at the point; pairing
    the row with a form's coefficient vector gives that mixed partial.
    """
    if isinstance(point, PointPair):
        p, q = point.p, point.q
    else:
        p, q = point
    a, b = order
    if a < 0 or b < 0:
        raise ValueError("derivative orders must be nonnegative")
    dx, dy = bidegree
    if dx < 0 or dy < 0:
        raise ValueError("bidegree must be componentwise nonnegative")
    xs = derivative_table(point_chart(p), a, dx)
    ys = derivative_table(point_chart(q), b, dy)
    return tuple(
        xs[e0] * ys[f0] for e0 in range(dx, -1, -1) for f0 in range(dy, -1, -1)
    )
