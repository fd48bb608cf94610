"""Independent brute-force oracles and instance generators for the tests.

Everything here is deliberately naive: full product enumeration and
pairwise dominance scans, sharing no code with the package's pruned
enumerator, archive-based filtering or subdivision search.  Frozen desk
values in the test modules were produced with these functions before the
package was written.
"""

from fractions import Fraction
from itertools import product

from fuzzyip.model import (
    CrispPolytope,
    FuzzyInequalityProblem,
    FuzzyRow,
    HyperBox,
    MoilpProblem,
    make_moilp,
)
from fuzzyip.fuzzy import (
    Interval,
    LRFuzzy,
    PiecewiseLinear,
    RankingSystem,
    Trapezoidal,
    Triangular,
)


def brute_points(A, b, box, nonneg=True):
    """All lattice points of the box with A x <= b (and x >= 0)."""
    out = []
    for x in product(*(range(lo, hi + 1) for lo, hi in box)):
        if nonneg and any(v < 0 for v in x):
            continue
        if all(sum(c * v for c, v in zip(row, x)) <= rhs
               for row, rhs in zip(A, b)):
            out.append(x)
    return out


def brute_nd(points, C):
    """Nondominated (x, value) pairs by a full pairwise scan."""
    vals = [tuple(sum(c * v for c, v in zip(row, x)) for row in C)
            for x in points]
    out = []
    for i, (x, v) in enumerate(zip(points, vals)):
        dominated = any(
            j != i and w != v and all(a >= b for a, b in zip(w, v))
            for j, w in enumerate(vals))
        if not dominated:
            out.append((x, v))
    return out


def brute_nd_of_moilp(problem: MoilpProblem):
    pts = brute_points(problem.polytope.A, problem.polytope.b,
                       list(zip(problem.box.lo, problem.box.hi)),
                       problem.polytope.nonneg)
    return brute_nd(pts, problem.C)


def brute_fuzzy_solutions(problem: FuzzyInequalityProblem, box):
    """Fuzzy solutions by direct rational membership evaluation.

    Enumerates the expanded region, evaluates mu(x) = min_i mu_i(x) as an
    exact Fraction, filters the nondominated (c x, mu) pairs and drops
    membership zero, with no scaling variable anywhere.
    """
    pts = []
    for x in product(*(range(lo, hi + 1) for lo, hi in box)):
        linears = [
            1 + row.slope * (row.rhs - sum(c * v for c, v in zip(row.coeffs, x)))
            for row in problem.rows]
        if any(l < 0 for l in linears):
            continue  # outside the expanded region: infeasible, not mu = 0
        mu = min(Fraction(1), min(linears))
        pts.append((x, sum(c * v for c, v in zip(problem.objective, x)), mu))
    nd = []
    for x, cx, mu in pts:
        dominated = any(
            (cy, nu) != (cx, mu) and cy >= cx and nu >= mu
            for _, cy, nu in pts)
        if not dominated and mu > 0:
            nd.append((x, cx, mu))
    return sorted(nd)


# ------------------------------------------------------------- generators

def random_moilp(rng, max_dim=4) -> MoilpProblem:
    """Small bounded random instance: a simplex row guarantees the
    feasible set stays inside the derived L-box."""
    d = rng.randint(2, max_dim)
    budget = rng.randint(2, 9)
    rows = [tuple(1 for _ in range(d))]
    rhs = [budget]
    for _ in range(rng.randint(0, 2)):
        rows.append(tuple(rng.randint(-9, 9) for _ in range(d)))
        rhs.append(rng.randint(-3, 9))
    k = rng.randint(1, 4)
    C = tuple(tuple(rng.randint(-9, 9) for _ in range(d)) for _ in range(k))
    return make_moilp(CrispPolytope(rows, rhs), C)


def random_fip(rng) -> FuzzyInequalityProblem:
    """Small fuzzy-inequality instance with a bounding first row."""
    n = rng.randint(1, 2)
    rows = [FuzzyRow(tuple(1 for _ in range(n)), rng.randint(2, 6),
                     rng.randint(1, 3), rng.randint(1, 4))]
    if rng.random() < 0.6:
        rows.append(FuzzyRow(tuple(rng.randint(-3, 3) for _ in range(n)),
                             rng.randint(0, 6), rng.randint(1, 3),
                             rng.randint(1, 4)))
    objective = tuple(rng.randint(-5, 5) for _ in range(n))
    return FuzzyInequalityProblem(objective, tuple(rows))


def random_fuzzy_number(rng, allow_lr=True):
    kind = rng.choice(["interval", "triangular", "trapezoidal", "pwl"]
                      + (["lr"] if allow_lr else []))
    a = sorted(Fraction(rng.randint(-8, 8), rng.choice([1, 1, 2, 4]))
               for _ in range(4))
    if kind == "interval":
        return Interval(a[0], a[1])
    if kind == "triangular":
        return Triangular(a[0], a[1], a[2])
    if kind == "trapezoidal":
        return Trapezoidal(a[0], a[1], a[2], a[3])
    if kind == "pwl":
        zs = sorted({Fraction(rng.randint(-8, 8), rng.choice([1, 2]))
                     for _ in range(rng.randint(2, 5))})
        if len(zs) < 2:
            zs = [Fraction(0), Fraction(1)]
        peak = rng.randrange(len(zs))
        mus = []
        for i in range(len(zs)):
            if i < peak:
                mus.append(Fraction(rng.randint(0, 3), 4))
            elif i == peak:
                mus.append(Fraction(1))
            else:
                mus.append(Fraction(rng.randint(0, 3), 4))
        mus[:peak] = sorted(mus[:peak])
        mus[peak + 1:] = sorted(mus[peak + 1:], reverse=True)
        return PiecewiseLinear(list(zip(zs, mus)))
    s_choices = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3),
                 Fraction(3, 2)]
    mid = sorted(a[:3])
    return LRFuzzy(mid[0], mid[1], mid[2],
                   rng.choice(s_choices), rng.choice(s_choices))


def random_ranking(rng) -> RankingSystem:
    levels = sorted({Fraction(rng.randint(1, 3), 4) for _ in range(rng.randint(0, 2))})
    return RankingSystem(tuple(levels) + (Fraction(1),))
