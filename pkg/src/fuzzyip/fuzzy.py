"""Fuzzy numbers: membership functions, alpha-cuts, ranking systems and
polygonal approximation of LR-shaped numbers.

Every fuzzy number here is normal (membership 1 is attained) and
quasi-concave, so each alpha-cut is a closed interval.  All arithmetic is
exact except LR shapes with non-integral exponents, where endpoints are
bisection-bounded rationals within 2^-30, rounded outward so the reported
cut always contains the true one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import as_rational, exact_nth_root, rat_dot

#: Bisection tolerance for LR cut endpoints and membership values.
LR_TOLERANCE = Fraction(1, 2 ** 30)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class AlphaCut:
    """Closed interval {z : membership(z) >= alpha}."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty cut: lo={self.lo} > hi={self.hi}")

    def __contains__(self, z) -> bool:
        return self.lo <= z <= self.hi


@dataclass(frozen=True)
class RankingSystem:
    """Finite list of alpha levels used to compare fuzzy numbers.

    Construction never raises for semantic problems; use :meth:`violations`
    (the model validator does) before relying on the levels.
    """

    alphas: tuple

    def __init__(self, alphas):
        object.__setattr__(self, "alphas", tuple(as_rational(a) for a in alphas))

    def violations(self) -> list:
        problems = []
        if not self.alphas:
            problems.append("ranking system must be nonempty")
            return problems
        if any(not (0 < a <= 1) for a in self.alphas):
            problems.append("ranking levels must lie in (0, 1]")
        if any(b <= a for a, b in zip(self.alphas, self.alphas[1:])):
            problems.append("ranking levels must be strictly increasing")
        if self.alphas[-1] != 1:
            problems.append("ranking system must end at alpha = 1")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def require_valid(self):
        problems = self.violations()
        if problems:
            raise ValueError("invalid ranking system: " + "; ".join(problems))

    def descending(self) -> tuple:
        return tuple(reversed(self.alphas))

    def __iter__(self):
        return iter(self.alphas)

    def __len__(self):
        return len(self.alphas)


class FuzzyNumber:
    """Base class; concrete variants implement membership and cuts."""

    def membership(self, z) -> Fraction:
        raise NotImplementedError

    def cut(self, alpha) -> AlphaCut:
        raise NotImplementedError

    def support(self) -> tuple:
        """Closure of {z : membership(z) > 0} as (lo, hi)."""
        raise NotImplementedError


@dataclass(frozen=True)
class Interval(FuzzyNumber):
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval needs lo <= hi")

    def membership(self, z):
        return _ONE if self.lo <= z <= self.hi else _ZERO

    def cut(self, alpha):
        return AlphaCut(self.lo, self.hi)

    def support(self):
        return (self.lo, self.hi)


def crisp(value) -> Interval:
    """A crisp scalar as the degenerate interval [value, value]."""
    v = as_rational(value)
    return Interval(v, v)


@dataclass(frozen=True)
class Triangular(FuzzyNumber):
    a1: Fraction
    a2: Fraction
    a3: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not self.a1 <= self.a2 <= self.a3:
            raise ValueError("triangular needs a1 <= a2 <= a3")

    def membership(self, z):
        z = as_rational(z)
        if z == self.a2:
            return _ONE
        if self.a1 <= z < self.a2:
            return (z - self.a1) / (self.a2 - self.a1)
        if self.a2 < z <= self.a3:
            return (self.a3 - z) / (self.a3 - self.a2)
        return _ZERO

    def cut(self, alpha):
        alpha = as_rational(alpha)
        return AlphaCut(self.a1 + alpha * (self.a2 - self.a1),
                        self.a3 - alpha * (self.a3 - self.a2))

    def support(self):
        return (self.a1, self.a3)


@dataclass(frozen=True)
class Trapezoidal(FuzzyNumber):
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not self.a1 <= self.a2 <= self.a3 <= self.a4:
            raise ValueError("trapezoidal needs a1 <= a2 <= a3 <= a4")

    def membership(self, z):
        z = as_rational(z)
        if self.a2 <= z <= self.a3:
            return _ONE
        if self.a1 <= z < self.a2:
            return (z - self.a1) / (self.a2 - self.a1)
        if self.a3 < z <= self.a4:
            return (self.a4 - z) / (self.a4 - self.a3)
        return _ZERO

    def cut(self, alpha):
        alpha = as_rational(alpha)
        return AlphaCut(self.a1 + alpha * (self.a2 - self.a1),
                        self.a4 - alpha * (self.a4 - self.a3))

    def support(self):
        return (self.a1, self.a4)


@dataclass(frozen=True)
class PiecewiseLinear(FuzzyNumber):
    """Polygonal fuzzy number given by (z, membership) breakpoints.

    Breakpoints must be strictly increasing in z and quasi-concave in
    membership.  Non-normal inputs are normalized by dividing through by
    the maximum membership.
    """

    points: tuple

    def __init__(self, points):
        pts = tuple((as_rational(z), as_rational(m)) for z, m in points)
        if not pts:
            raise ValueError("piecewise-linear number needs breakpoints")
        if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
            raise ValueError("breakpoint z values must be strictly increasing")
        if any(m < 0 or m > 1 for _, m in pts):
            raise ValueError("membership values must lie in [0, 1]")
        peak = max(m for _, m in pts)
        if peak == 0:
            raise ValueError("membership must be positive somewhere")
        if peak < 1:
            pts = tuple((z, m / peak) for z, m in pts)
        mus = [m for _, m in pts]
        drop = next((i for i in range(1, len(mus)) if mus[i] < mus[i - 1]), len(mus))
        if any(mus[i] > mus[i - 1] for i in range(drop, len(mus))):
            raise ValueError("membership must be nondecreasing then nonincreasing")
        object.__setattr__(self, "points", pts)

    def membership(self, z):
        z = as_rational(z)
        pts = self.points
        if z < pts[0][0] or z > pts[-1][0]:
            return _ZERO
        for (z0, m0), (z1, m1) in zip(pts, pts[1:]):
            if z0 <= z <= z1:
                return m0 + (m1 - m0) * (z - z0) / (z1 - z0)
        return pts[-1][1] if z == pts[-1][0] else _ZERO

    def cut(self, alpha):
        alpha = as_rational(alpha)
        pts = self.points
        rise = next(i for i, (_, m) in enumerate(pts) if m >= alpha)
        if rise == 0:
            lo = pts[0][0]
        else:
            (z0, m0), (z1, m1) = pts[rise - 1], pts[rise]
            lo = z0 + (alpha - m0) * (z1 - z0) / (m1 - m0)
        fall = next(i for i in range(len(pts) - 1, -1, -1) if pts[i][1] >= alpha)
        if fall == len(pts) - 1:
            hi = pts[-1][0]
        else:
            (z0, m0), (z1, m1) = pts[fall], pts[fall + 1]
            hi = z0 + (alpha - m0) * (z1 - z0) / (m1 - m0)
        return AlphaCut(lo, hi)

    def support(self):
        return (self.points[0][0], self.points[-1][0])


def _shape_pow_bounds(t: Fraction, s: Fraction) -> tuple:
    """Rational bounds [lo, hi] for t**s with t in [0, 1], hi - lo <= 2^-30."""
    base = t ** s.numerator
    root = exact_nth_root(base, s.denominator)
    if root is not None:
        return (root, root)
    lo, hi = _ZERO, _ONE
    while hi - lo > LR_TOLERANCE:
        mid = (lo + hi) / 2
        if mid ** s.denominator <= base:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def _inverse_shape_bounds(level: Fraction, s: Fraction) -> tuple:
    """Rational bounds for the t in [0, 1] solving t**s = level."""
    target = level ** s.denominator
    root = exact_nth_root(target, s.numerator)
    if root is not None:
        return (root, root)
    lo, hi = _ZERO, _ONE
    while hi - lo > LR_TOLERANCE:
        mid = (lo + hi) / 2
        if mid ** s.numerator <= target:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


@dataclass(frozen=True)
class LRFuzzy(FuzzyNumber):
    """LR fuzzy number with shape family t -> max(0, 1 - t**s), s > 0.

    Membership is L((a1-z)/(a1-a0)) left of the peak a1 and
    R((z-a1)/(a2-a1)) right of it; both shapes equal 1 at t = 0 and
    decrease strictly on [0, 1).
    """

    a0: Fraction
    a1: Fraction
    a2: Fraction
    left_exponent: Fraction
    right_exponent: Fraction

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "left_exponent", "right_exponent"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not self.a0 <= self.a1 <= self.a2:
            raise ValueError("LR number needs a0 <= a1 <= a2")
        if self.left_exponent <= 0 or self.right_exponent <= 0:
            raise ValueError("shape exponents must be positive")

    def membership(self, z):
        z = as_rational(z)
        if z == self.a1:
            return _ONE
        if z < self.a1:
            if z <= self.a0:
                return _ZERO
            t = (self.a1 - z) / (self.a1 - self.a0)
            s = self.left_exponent
        else:
            if z >= self.a2:
                return _ZERO
            t = (z - self.a1) / (self.a2 - self.a1)
            s = self.right_exponent
        lo, hi = _shape_pow_bounds(t, s)
        value = _ONE - (lo + hi) / 2
        return max(_ZERO, min(_ONE, value))

    def cut(self, alpha):
        alpha = as_rational(alpha)
        level = _ONE - alpha
        # Larger t widens the cut, so the upper bisection bound rounds outward.
        t_left = _inverse_shape_bounds(level, self.left_exponent)[1]
        t_right = _inverse_shape_bounds(level, self.right_exponent)[1]
        return AlphaCut(self.a1 - t_left * (self.a1 - self.a0),
                        self.a1 + t_right * (self.a2 - self.a1))

    def support(self):
        return (self.a0, self.a2)


def membership_at(f: FuzzyNumber, z) -> Fraction:
    """Exact membership degree of z, up to 2^-30 for non-integral LR shapes."""
    return f.membership(as_rational(z))


def alpha_cut(f: FuzzyNumber, alpha) -> AlphaCut:
    """The closed interval {z : membership(z) >= alpha} for alpha in (0, 1]."""
    alpha = as_rational(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return f.cut(alpha)


def alpha_cut_dot(coeffs, x, alpha) -> AlphaCut:
    """Alpha-cut of sum(c_i * x_i) for fuzzy c and nonnegative integer x.

    The endpoints are the dot products of the per-coefficient cut endpoints
    with x; this is only valid for x >= 0 componentwise.
    """
    if any(xi < 0 for xi in x):
        raise ValueError("alpha_cut_dot requires x >= 0 componentwise")
    cuts = [alpha_cut(c, alpha) for c in coeffs]
    return AlphaCut(rat_dot([c.lo for c in cuts], x),
                    rat_dot([c.hi for c in cuts], x))


def approximate_lr(f: LRFuzzy, k: int) -> PiecewiseLinear:
    """Polygonal approximation of an LR number on the k-node grid i/k.

    The polygon interpolates the (outward-rounded) cut endpoints at every
    node alpha = i/k plus the exact support endpoints at level 0, so it is
    exact at each node of the induced ranking system and conservative in
    between.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    cuts = [f.cut(Fraction(i, k)) for i in range(1, k + 1)]
    # Walk the polygon left to right: support start, rising cut lows, the
    # peak (the 1-cut is the single point a1), falling cut highs, support
    # end.  Outward rounding can produce non-monotone endpoints at gaps
    # below the tolerance; clamping keeps the polygon well formed.
    points = [(f.a0, _ZERO)]
    for i, c in enumerate(cuts, start=1):
        points.append((max(c.lo, points[-1][0]), Fraction(i, k)))
    for i in range(k - 1, 0, -1):
        points.append((max(cuts[i - 1].hi, points[-1][0]), Fraction(i, k)))
    points.append((max(f.a2, points[-1][0]), _ZERO))
    merged = []
    for z, m in points:
        if merged and merged[-1][0] == z:
            merged[-1] = (z, max(merged[-1][1], m))
        else:
            merged.append((z, m))
    return PiecewiseLinear(merged)
