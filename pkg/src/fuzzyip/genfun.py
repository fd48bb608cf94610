"""Desk-scale rational generating functions for lattice point sets.

A point set is encoded as a signed sum of terms eps * z^u / prod(1 - z^v)
and realized explicitly as a windowed monomial series: each term is
expanded in the cone direction fixed by the signs of its denominator
vectors and the signed expansions are accumulated over a finite window.
The feasible / dominated / nondominated series of a multiobjective
program follow the subtraction scheme nd = feasible - dominated, and
counting nondominated points inside a box is a Hadamard product of the
box's generating function with the nondominated series.

The polynomial-time machinery for short generating functions (cone
decomposition, projection, polynomial Hadamard products) is out of scope;
windowed expansion with the same interfaces stands in for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .model import DEFAULT_GUARD, GuardLimitError, HyperBox, MoilpProblem
from .ndenum import enumerate_lattice, maximal_values


class ExpansionError(ValueError):
    """A denominator direction cannot be expanded inside a box window."""


class SeriesConsistencyError(RuntimeError):
    """A point-set series produced a coefficient outside {0, 1}."""


@dataclass(frozen=True)
class GfTerm:
    """One signed term sign * z^numerator / prod_j (1 - z^v_j)."""

    sign: int
    numerator: tuple
    denominators: tuple

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominators",
                           tuple(tuple(v) for v in self.denominators))
        d = len(self.numerator)
        for v in self.denominators:
            if len(v) != d:
                raise ValueError("denominator dimension mismatch")
            if all(c == 0 for c in v):
                raise ValueError("denominator vectors must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.numerator)


@dataclass(frozen=True)
class GfSum:
    """Formal sum of GfTerms in one fixed dimension."""

    terms: tuple
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if any(t.dim != self.dim for t in self.terms):
            raise ValueError("all terms must share the sum's dimension")

    def __neg__(self) -> "GfSum":
        return GfSum(tuple(GfTerm(-t.sign, t.numerator, t.denominators)
                           for t in self.terms), self.dim)

    def __add__(self, other: "GfSum") -> "GfSum":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return GfSum(self.terms + other.terms, self.dim)


@dataclass(frozen=True)
class MonomialSeries:
    """Explicit expansion: exponent vector -> integer coefficient.

    Only nonzero coefficients are stored; support stays inside the window
    (window None means the empty window).
    """

    dim: int
    coeffs: dict
    window: HyperBox | None

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           {tuple(e): c for e, c in self.coeffs.items() if c != 0})
        if self.window is not None and self.window.dim != self.dim:
            raise ValueError("window dimension mismatch")
        for e in self.coeffs:
            if self.window is None or not self.window.contains(e):
                raise ValueError(f"support point {e} outside the window")

    def count(self) -> int:
        return sum(self.coeffs.values())

    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def coefficient(self, exponent) -> int:
        return self.coeffs.get(tuple(exponent), 0)

    def is_zero_one(self) -> bool:
        return all(c in (0, 1) for c in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, MonomialSeries):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))


def gf_interval(n: int) -> GfSum:
    """Generating function of {0, ..., n}: z^0/(1-z) + z^n/(1-z^-1),
    the two-cone form of (1 - z^(n+1)) / (1 - z)."""
    if n < 0:
        raise ValueError("interval endpoint must be nonnegative")
    return GfSum((GfTerm(1, (0,), ((1,),)),
                  GfTerm(1, (n,), ((-1,),))), 1)


def gf_box(box: HyperBox) -> GfSum:
    """Generating function of a box as the product of per-dimension
    interval functions, expanded into its 2^d corner terms."""
    d = box.dim
    terms = []
    for corners in product(range(2), repeat=d):
        numerator = tuple(box.lo[i] if c == 0 else box.hi[i]
                          for i, c in enumerate(corners))
        dens = tuple(
            tuple((1 if c == 0 else -1) if j == i else 0 for j in range(d))
            for i, c in enumerate(corners))
        terms.append(GfTerm(1, numerator, dens))
    return GfSum(tuple(terms), d)


def _normalize_direction(term: GfTerm):
    """Flip denominators to nonnegative direction via
    1/(1-z^v) = -z^(-v)/(1-z^(-v)); mixed-sign vectors cannot be expanded
    box-finitely and are rejected."""
    sign = term.sign
    u = list(term.numerator)
    dens = []
    for v in term.denominators:
        if all(c >= 0 for c in v):
            dens.append(v)
        elif all(c <= 0 for c in v):
            sign = -sign
            u = [a - c for a, c in zip(u, v)]
            dens.append(tuple(-c for c in v))
        else:
            raise ExpansionError(
                f"denominator vector {v} has mixed signs; no terminating "
                "expansion direction inside a box window")
    return sign, tuple(u), tuple(dens)


def _expand_term(term: GfTerm, window: HyperBox, acc: dict):
    sign, u, dens = _normalize_direction(term)
    lo, hi = window.lo, window.hi
    axes = {}
    for v in dens:
        nonzero = [i for i, c in enumerate(v) if c != 0]
        if len(nonzero) == 1 and v[nonzero[0]] == 1 and nonzero[0] not in axes:
            axes[nonzero[0]] = True
        else:
            axes = None
            break
    if axes is not None:
        # All denominators are distinct unit vectors: the support is a box.
        ranges = []
        for i in range(len(u)):
            if i in axes:
                if u[i] > hi[i]:
                    return
                ranges.append(range(max(u[i], lo[i]), hi[i] + 1))
            else:
                if not lo[i] <= u[i] <= hi[i]:
                    return
                ranges.append(range(u[i], u[i] + 1))
        for e in product(*ranges):
            acc[e] = acc.get(e, 0) + sign
        return

    dens = list(dens)

    def recurse(j, e):
        if any(ei > h for ei, h in zip(e, hi)):
            return
        if j == len(dens):
            if all(ei >= l for ei, l in zip(e, lo)):
                t = tuple(e)
                acc[t] = acc.get(t, 0) + sign
            return
        step = dens[j]
        cur = list(e)
        while all(ci <= h for ci, h in zip(cur, hi)):
            recurse(j + 1, cur)
            cur = [a + s for a, s in zip(cur, step)]

    recurse(0, list(u))


def expand(g: GfSum, window: HyperBox, guard: int = DEFAULT_GUARD) -> MonomialSeries:
    """Signed accumulation of every term's cone over the window."""
    if window.dim != g.dim:
        raise ValueError("window dimension must match the sum's dimension")
    if window.volume() > guard:
        raise GuardLimitError(
            f"window volume {window.volume()} exceeds the guard {guard}")
    acc: dict = {}
    for term in g.terms:
        _expand_term(term, window, acc)
    return MonomialSeries(g.dim, acc, window)


def hadamard(s1: MonomialSeries, s2: MonomialSeries) -> MonomialSeries:
    """Coefficientwise product on the intersection of the windows."""
    if s1.dim != s2.dim:
        raise ValueError("dimension mismatch")
    if s1.window is None or s2.window is None:
        window = None
    else:
        window = s1.window.intersect(s2.window)
    small, big = (s1, s2) if len(s1.coeffs) <= len(s2.coeffs) else (s2, s1)
    coeffs = {}
    for e, c in small.coeffs.items():
        other = big.coeffs.get(e)
        if other and (window is None or window.contains(e)):
            coeffs[e] = c * other
    if window is None and coeffs:
        raise AssertionError("disjoint windows cannot share support")
    return MonomialSeries(s1.dim, coeffs, window)


def feasible_series(problem: MoilpProblem, window: HyperBox | None = None,
                    guard: int = DEFAULT_GUARD) -> MonomialSeries:
    """Indicator series of the feasible lattice points in the window
    (the explicit stand-in for the polytope's short generating function)."""
    window = window if window is not None else problem.box
    points = enumerate_lattice(problem.polytope, window, guard)
    return MonomialSeries(window.dim, {x: 1 for x in points}, window)


def dominated_series(problem: MoilpProblem, window: HyperBox | None = None,
                     guard: int = DEFAULT_GUARD) -> MonomialSeries:
    """Indicator of feasible points dominated by some feasible point.

    A point is dominated when another feasible point weakly improves every
    objective and strictly improves their sum; for integral objectives
    that is exactly 'values differ'.  Equal-value points dominate nothing.
    """
    window = window if window is not None else problem.box
    points = enumerate_lattice(problem.polytope, window, guard)
    values = [problem.values(x) for x in points]
    maximal = maximal_values(values)
    coeffs = {x: 1 for x, v in zip(points, values) if v not in maximal}
    return MonomialSeries(window.dim, coeffs, window)


def series_difference(total: MonomialSeries, removed: MonomialSeries) -> MonomialSeries:
    """total - removed for indicator series; any resulting coefficient
    outside {0, 1} signals an inconsistent pipeline."""
    if total.dim != removed.dim:
        raise ValueError("dimension mismatch")
    coeffs = dict(total.coeffs)
    for e, c in removed.coeffs.items():
        coeffs[e] = coeffs.get(e, 0) - c
    for e, c in coeffs.items():
        if c < 0:
            raise SeriesConsistencyError(
                f"negative coefficient {c} at {e}: removed series is not "
                "contained in the total")
        if c not in (0, 1):
            raise SeriesConsistencyError(
                f"coefficient {c} at {e} is not an indicator value")
    return MonomialSeries(total.dim, coeffs, total.window)


def nd_series(problem: MoilpProblem, window: HyperBox | None = None,
              guard: int = DEFAULT_GUARD) -> MonomialSeries:
    """feasible - dominated: the indicator of the nondominated set."""
    window = window if window is not None else problem.box
    return series_difference(feasible_series(problem, window, guard),
                             dominated_series(problem, window, guard))


class SeriesCountOracle:
    """Count oracle whose counts are Hadamard products of box generating
    functions with one precomputed nondominated series.

    The box side of the product is evaluated sparsely (intersecting the
    series' support with the box), which is exactly the Hadamard count
    because box indicators are 0/1.
    """

    def __init__(self, problem: MoilpProblem, window: HyperBox | None = None,
                 guard: int = DEFAULT_GUARD):
        self.problem = problem
        self.window = window if window is not None else problem.box
        self.nd = nd_series(problem, self.window, guard)

    def count_in_box(self, box: HyperBox) -> int:
        return sum(c for e, c in self.nd.coeffs.items() if box.contains(e))


def format_gf(g: GfSum, name: str = "z") -> str:
    """Render a GfSum in the eps * z^u / prod(1 - z^v) notation."""

    def fmt_exp(vec):
        if len(vec) == 1:
            return str(vec[0])
        return "(" + ",".join(str(c) for c in vec) + ")"

    parts = []
    for i, t in enumerate(g.terms):
        sign = "-" if t.sign < 0 else "+"
        numer = f"{name}^{fmt_exp(t.numerator)}"
        if t.denominators:
            denom = "".join(f"(1 - {name}^{fmt_exp(v)})" for v in t.denominators)
            body = f"{numer} / {denom}"
        else:
            body = numer
        parts.append(f"{sign} {body}" if i or sign == "-" else body)
    return " ".join(parts) if parts else "0"
