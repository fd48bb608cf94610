"""Problem representations: crisp polytopes, multiobjective integer
programs, the fuzzy problem classes, and their validation.

Solvers in this package enumerate lattice points inside an explicit box,
so validation insists on bounded feasible sets (certified exactly by
Fourier-Motzkin elimination on the recession cone) and checks, up to the
enumeration guard, that the default search box really contains every
feasible lattice point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exactmath import as_int_matrix, as_int_vector, as_rational, rat_dot
from .fuzzy import FuzzyNumber, RankingSystem

#: Refuse plain enumeration above this many candidate lattice points.
DEFAULT_GUARD = 10 ** 8

_FM_ROW_CAP = 20000


class GuardLimitError(RuntimeError):
    """Raised when an enumeration would exceed the configured guard."""


@dataclass(frozen=True)
class HyperBox:
    """Product of per-dimension integer intervals [lo_i, hi_i]."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        object.__setattr__(self, "lo", as_int_vector(self.lo))
        object.__setattr__(self, "hi", as_int_vector(self.hi))
        if len(self.lo) != len(self.hi) or not self.lo:
            raise ValueError("box needs matching nonempty lo/hi vectors")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise ValueError("box needs lo_i <= hi_i in every dimension")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def sides(self) -> tuple:
        return tuple(h - l + 1 for l, h in zip(self.lo, self.hi))

    def volume(self) -> int:
        return math.prod(self.sides())

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, point) -> bool:
        return all(l <= p <= h for l, p, h in zip(self.lo, point, self.hi))

    def intersect(self, other: "HyperBox"):
        """Intersection box, or None when the boxes are disjoint."""
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, other.hi))
        if any(l > h for l, h in zip(lo, hi)):
            return None
        return HyperBox(lo, hi)

    def split(self) -> tuple:
        """Midpoint subdivision along every non-degenerate dimension.

        Dimension i splits at floor((lo+hi)/2); degenerate dimensions stay
        fixed.  Children come in lexicographic low-half-first order.  A
        single-point box yields no children.
        """
        if self.is_point():
            return ()
        parts = []
        for l, h in zip(self.lo, self.hi):
            if l == h:
                parts.append(((l, h),))
            else:
                mid = (l + h) // 2
                parts.append(((l, mid), (mid + 1, h)))
        return tuple(
            HyperBox(tuple(p[0] for p in combo), tuple(p[1] for p in combo))
            for combo in product(*parts)
        )

    def iter_points(self):
        """All lattice points in lexicographic order (generator)."""
        return product(*(range(l, h + 1) for l, h in zip(self.lo, self.hi)))


class CrispPolytope:
    """P = {x : A x <= b} with implied x >= 0 when nonneg is set."""

    def __init__(self, A, b, nonneg: bool = True, n: int | None = None):
        self.A = as_int_matrix(A)
        self.b = as_int_vector(b)
        if len(self.A) != len(self.b):
            raise ValueError("A and b must have the same number of rows")
        if self.A:
            self.n = len(self.A[0])
            if n is not None and n != self.n:
                raise ValueError("explicit n conflicts with A's column count")
        else:
            if n is None:
                raise ValueError("n is required when there are no rows")
            self.n = n
        if self.n < 1:
            raise ValueError("need at least one variable")
        self.nonneg = bool(nonneg)

    @property
    def m(self) -> int:
        return len(self.A)

    def contains(self, x) -> bool:
        if self.nonneg and any(xi < 0 for xi in x):
            return False
        return all(rat_dot(row, x) <= bi for row, bi in zip(self.A, self.b))

    def __eq__(self, other):
        return (isinstance(other, CrispPolytope)
                and (self.A, self.b, self.nonneg, self.n)
                == (other.A, other.b, other.nonneg, other.n))

    def __hash__(self):
        return hash((self.A, self.b, self.nonneg, self.n))

    def __repr__(self):
        return f"CrispPolytope(A={self.A!r}, b={self.b!r}, nonneg={self.nonneg})"


@dataclass(frozen=True)
class MoilpProblem:
    """max C x over the polytope's lattice points inside box."""

    polytope: CrispPolytope
    C: tuple
    box: HyperBox

    def __post_init__(self):
        object.__setattr__(self, "C", as_int_matrix(self.C))
        if not self.C:
            raise ValueError("need at least one objective row")
        if len(self.C[0]) != self.polytope.n:
            raise ValueError("objective columns must match variable count")
        if self.box.dim != self.polytope.n:
            raise ValueError("box dimension must match variable count")

    @property
    def n(self) -> int:
        return self.polytope.n

    @property
    def k(self) -> int:
        return len(self.C)

    def values(self, x) -> tuple:
        return tuple(rat_dot(row, x) for row in self.C)

    def dedup_objectives(self) -> "MoilpProblem":
        """Drop duplicate objective rows (dominance is unchanged)."""
        seen, rows = set(), []
        for row in self.C:
            if row not in seen:
                seen.add(row)
                rows.append(row)
        if len(rows) == len(self.C):
            return self
        return MoilpProblem(self.polytope, tuple(rows), self.box)


@dataclass(frozen=True)
class FuzzyRow:
    """One fuzzified inequality a x <= b with slope p/q.

    Satisfaction degrades linearly from 1 at a x = b to 0 at
    a x = b + q/p, so epsilon_i = q_i / p_i.
    """

    coeffs: tuple
    rhs: int
    p: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_int_vector(self.coeffs))

    @property
    def slope(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def epsilon(self) -> Fraction:
        return Fraction(self.q, self.p)


@dataclass(frozen=True)
class FuzzyInequalityProblem:
    """max c x with every inequality fuzzified (variables x >= 0)."""

    objective: tuple
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "objective", as_int_vector(self.objective))
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def n(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class FuzzyObjectiveProblem:
    """max of a fuzzy-coefficient objective over a crisp polytope."""

    polytope: CrispPolytope
    coefficients: tuple
    ranking: RankingSystem

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    @property
    def n(self) -> int:
        return self.polytope.n


@dataclass(frozen=True)
class CombinedFuzzyProblem:
    """Fuzzy objective rows over fuzzified inequalities (Remark 1/2 form)."""

    objective_rows: tuple
    rows: tuple
    ranking: RankingSystem

    def __post_init__(self):
        object.__setattr__(self, "objective_rows",
                           tuple(tuple(r) for r in self.objective_rows))
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def n(self) -> int:
        return len(self.objective_rows[0]) if self.objective_rows else 0

    @property
    def k(self) -> int:
        return len(self.objective_rows)


@dataclass(frozen=True)
class FuzzySolution:
    """Integer point with its objective value(s) and membership degree."""

    x: tuple
    values: tuple
    membership: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_int_vector(self.x))
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "membership", as_rational(self.membership))
        if not 0 < self.membership <= 1:
            raise ValueError("membership must lie in (0, 1]")


def lattice_points(polytope: CrispPolytope, box: HyperBox,
                   guard: int = DEFAULT_GUARD) -> list:
    """Lattice points of the box satisfying A x <= b (and x >= 0), in
    lexicographic order.

    Nested loops carry partial row sums and prune a prefix as soon as no
    completion can satisfy some row, so loose boxes cost little.  Boxes
    whose raw volume exceeds the guard are refused outright.
    """
    volume = box.volume()
    if volume > guard:
        raise GuardLimitError(
            f"box volume {volume} exceeds the enumeration guard {guard}")
    lo = tuple(max(l, 0) for l in box.lo) if polytope.nonneg else box.lo
    hi = box.hi
    if any(l > h for l, h in zip(lo, hi)):
        return []
    n = polytope.n
    A, b = polytope.A, polytope.b
    # min_tail[r][j] = minimal contribution of dimensions j.. to row r.
    min_tail = []
    for row in A:
        tail = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            c = row[j]
            tail[j] = tail[j + 1] + (c * lo[j] if c >= 0 else c * hi[j])
        min_tail.append(tail)
    out = []
    point = [0] * n

    def descend(j, partial):
        if j == n:
            out.append(tuple(point))
            return
        for v in range(lo[j], hi[j] + 1):
            nxt = [p + row[j] * v for p, row in zip(partial, A)]
            if all(p + min_tail[r][j + 1] <= b[r] for r, p in enumerate(nxt)):
                point[j] = v
                descend(j + 1, nxt)

    descend(0, [0] * len(A))
    return out


def bounding_box_L(problem) -> HyperBox:
    """Default search box [0, L]^n with L = max(U, ceil(1/l)).

    U and l are the largest and smallest absolute values of the nonzero
    entries of (A | b).  For a MoilpProblem any user-supplied box is
    intersected with the derived one.
    """
    if isinstance(problem, MoilpProblem):
        base = bounding_box_L(problem.polytope)
        clipped = base.intersect(problem.box)
        if clipped is None:
            raise ValueError("user box is disjoint from the derived L-box")
        return clipped
    polytope = problem
    entries = [abs(e) for row in polytope.A for e in row if e != 0]
    entries += [abs(e) for e in polytope.b if e != 0]
    if not entries:
        raise ValueError("all-zero constraint data admits no L bound")
    L = max(max(entries), math.ceil(Fraction(1, min(entries))))
    return HyperBox((0,) * polytope.n, (L,) * polytope.n)


def make_moilp(polytope: CrispPolytope, C, box: HyperBox | None = None) -> MoilpProblem:
    """Build a MoilpProblem whose box is the L-box clipped by a user box."""
    derived = bounding_box_L(polytope)
    if box is not None:
        clipped = derived.intersect(box)
        if clipped is None:
            raise ValueError("user box is disjoint from the derived L-box")
        derived = clipped
    return MoilpProblem(polytope, C, derived)


# ----------------------------------------------------------------------
# Exact linear-inequality feasibility via Fourier-Motzkin elimination.
# Rows are (coeffs, rhs) meaning coeffs . x <= rhs, all entries rational.

def _fm_canonical(coeffs, rhs):
    scale = next((abs(c) for c in coeffs if c != 0), None)
    if scale is None:
        return None
    return (tuple(c / scale for c in coeffs), rhs / scale)


def _fm_feasible(rows, nvars: int):
    """True/False for feasibility; None if the row cap was exceeded."""
    current = []
    for coeffs, rhs in rows:
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                return False
        else:
            current.append((tuple(coeffs), rhs))
    for var in range(nvars):
        pos = [r for r in current if r[0][var] > 0]
        neg = [r for r in current if r[0][var] < 0]
        keep = [r for r in current if r[0][var] == 0]
        seen = {_fm_canonical(*r) for r in keep}
        nxt = list(keep)
        for pc, pr in pos:
            for nc, nr in neg:
                a, b = -nc[var], pc[var]
                coeffs = tuple(a * x + b * y for x, y in zip(pc, nc))
                rhs = a * pr + b * nr
                if all(c == 0 for c in coeffs):
                    if rhs < 0:
                        return False
                    continue
                key = _fm_canonical(coeffs, rhs)
                if key not in seen:
                    seen.add(key)
                    nxt.append((coeffs, rhs))
                    if len(nxt) > _FM_ROW_CAP:
                        return None
        current = nxt
    return True


def _region_rows(A, b, n, nonneg: bool):
    rows = [(tuple(Fraction(c) for c in row), as_rational(rhs))
            for row, rhs in zip(A, b)]
    if nonneg:
        for i in range(n):
            unit = tuple(Fraction(-1) if j == i else Fraction(0) for j in range(n))
            rows.append((unit, Fraction(0)))
    return rows


def _bounded_region(A, b, n, nonneg: bool = True):
    """Exact boundedness of {A x <= b, x >= 0}; None if FM gave up."""
    rows = _region_rows(A, b, n, nonneg)
    feasible = _fm_feasible(rows, n)
    if feasible is None:
        return None
    if not feasible:
        return True  # empty sets are bounded
    cone = [(coeffs, Fraction(0)) for coeffs, _ in rows]
    cone.append((tuple(Fraction(-1) for _ in range(n)), Fraction(-1)))
    nontrivial = _fm_feasible(cone, n)
    if nontrivial is None:
        return None
    return not nontrivial


def _scan_containment(polytope: CrispPolytope, box: HyperBox, guard: int):
    """Feasible lattice points of a doubled box that escape the given box.

    Returns None when the scan would exceed the guard.
    """
    doubled = HyperBox(box.lo, tuple(2 * h + 1 for h in box.hi))
    if doubled.volume() > guard:
        return None
    return [x for x in lattice_points(polytope, doubled, guard)
            if not box.contains(x)]


def _validate_ranking(ranking) -> list:
    if not isinstance(ranking, RankingSystem):
        return ["ranking must be a RankingSystem"]
    return ranking.violations()


def _validate_fuzzy_rows(rows, n) -> list:
    out = []
    if not rows:
        out.append("at least one fuzzy row is required")
    for i, row in enumerate(rows):
        if len(row.coeffs) != n:
            out.append(f"row {i}: expected {n} coefficients, got {len(row.coeffs)}")
        if row.p < 1:
            out.append(f"row {i}: slope must be positive (p >= 1)")
        if row.q < 1:
            out.append(f"row {i}: slope must be positive (q >= 1)")
    return out


def _validate_polytope(polytope: CrispPolytope) -> list:
    out = []
    bounded = _bounded_region(polytope.A, polytope.b, polytope.n, polytope.nonneg)
    if bounded is None:
        out.append("boundedness check exceeded the internal row cap")
    elif not bounded:
        out.append("feasible set is unbounded")
    return out


def validate(problem, guard: int = DEFAULT_GUARD) -> list:
    """Check structural and semantic invariants; empty list means ok.

    Never raises for content problems: every violation is reported as a
    message.  Box containment is only scanned up to the guard limit.
    """
    out = []
    if isinstance(problem, CrispPolytope):
        out += _validate_polytope(problem)
    elif isinstance(problem, MoilpProblem):
        out += _validate_polytope(problem.polytope)
        if not out:
            escaped = _scan_containment(problem.polytope, problem.box, guard)
            if escaped:
                out.append(
                    "feasible lattice points escape the search box, e.g. "
                    + str(escaped[0]))
    elif isinstance(problem, FuzzyInequalityProblem):
        out += _validate_fuzzy_rows(problem.rows, problem.n)
        if not out:
            A = [row.coeffs for row in problem.rows]
            b = [row.rhs + row.epsilon for row in problem.rows]
            bounded = _bounded_region(A, b, problem.n)
            if bounded is None:
                out.append("boundedness check exceeded the internal row cap")
            elif not bounded:
                out.append("expanded feasible set is unbounded")
    elif isinstance(problem, FuzzyObjectiveProblem):
        if len(problem.coefficients) != problem.n:
            out.append("objective length must match the variable count")
        if any(not isinstance(c, FuzzyNumber) for c in problem.coefficients):
            out.append("objective coefficients must be fuzzy numbers")
        out += _validate_ranking(problem.ranking)
        out += _validate_polytope(problem.polytope)
    elif isinstance(problem, CombinedFuzzyProblem):
        if not problem.objective_rows:
            out.append("at least one objective row is required")
        for j, row in enumerate(problem.objective_rows):
            if len(row) != problem.n:
                out.append(f"objective row {j}: inconsistent length")
            if any(not isinstance(c, FuzzyNumber) for c in row):
                out.append(f"objective row {j}: coefficients must be fuzzy numbers")
        out += _validate_ranking(problem.ranking)
        row_problems = _validate_fuzzy_rows(problem.rows, problem.n)
        out += row_problems
        if not row_problems:
            A = [row.coeffs for row in problem.rows]
            b = [row.rhs + row.epsilon for row in problem.rows]
            bounded = _bounded_region(A, b, problem.n)
            if bounded is None:
                out.append("boundedness check exceeded the internal row cap")
            elif not bounded:
                out.append("expanded feasible set is unbounded")
    else:
        out.append(f"unknown problem type: {type(problem).__name__}")
    return out
