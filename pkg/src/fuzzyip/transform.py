"""Reductions from fuzzy problems to crisp multiobjective integer programs.

Three routes are implemented:

* fuzzy inequalities -> biobjective program over (x, y) where the integer
  variable y = M * membership tracks the satisfaction degree,
* fuzzy objective coefficients -> one pair of alpha-cut endpoint objective
  rows per ranking level,
* both at once -> the cut-endpoint rows plus the y objective.

Objective rows are emitted with duplicates preserved (display order:
lower-endpoint rows for descending alpha, then upper-endpoint rows for
descending alpha; the combined route interleaves lower/upper per fuzzy
row within each level).  Solvers may drop duplicate rows afterwards, which
provably leaves the nondominated set unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import as_int_vector, as_rational, lcm_denominators, rat_dot
from .fuzzy import LRFuzzy, alpha_cut
from .model import (
    CrispPolytope,
    FuzzyInequalityProblem,
    FuzzySolution,
    HyperBox,
    MoilpProblem,
    bounding_box_L,
    validate,
)

_ONE = Fraction(1)


@dataclass(frozen=True)
class LinearMembership:
    """Linear satisfaction degree of one fuzzified inequality.

    On its linear piece the degree is 1 + slope * (rhs - row . x); the
    full membership clamps that piece to [0, 1].
    """

    row: tuple
    rhs: int
    slope: Fraction

    def __post_init__(self):
        object.__setattr__(self, "row", as_int_vector(self.row))
        object.__setattr__(self, "slope", as_rational(self.slope))
        if self.slope <= 0:
            raise ValueError("membership slope must be positive")

    def linear_value(self, x) -> Fraction:
        return _ONE + self.slope * (self.rhs - rat_dot(self.row, x))

    def evaluate(self, x) -> Fraction:
        return max(Fraction(0), min(_ONE, self.linear_value(x)))

    def linear_coefficients(self) -> tuple:
        """(constant, coefficient vector) of the linear piece."""
        constant = _ONE + self.slope * self.rhs
        coeffs = tuple(-self.slope * a for a in self.row)
        return constant, coeffs


@dataclass(frozen=True)
class ScaledBiobjective:
    """A transformed problem over (x, y) with y in [0, M].

    Every membership row i appears as the integer-coefficient constraint
    y <= M * mu_i(x); memberships are recovered as y / M.
    """

    moilp: MoilpProblem
    scale: int
    memberships: tuple

    @property
    def x_dim(self) -> int:
        return self.moilp.n - 1


def build_memberships(rows) -> tuple:
    """Linear membership functions of the fuzzified rows (min over them
    is the overall satisfaction degree)."""
    return tuple(
        LinearMembership(row.coeffs, row.rhs, row.slope) for row in rows
    )


def compute_scale_M(memberships) -> int:
    """lcm of the denominators of all membership linear-piece coefficients.

    Multiplying any membership value at an integer point by M yields an
    integer, so y = M * mu ranges over [0, M] (cap) intersected with Z.
    """
    if not memberships:
        raise ValueError("need at least one membership function")
    fractions = []
    for m in memberships:
        constant, coeffs = m.linear_coefficients()
        fractions.append(constant)
        fractions.extend(coeffs)
    return lcm_denominators(fractions)


def _require_valid(problem):
    problems = validate(problem)
    if problems:
        raise ValueError("invalid problem: " + "; ".join(problems))


def _membership_constraints(memberships, M: int, n: int):
    """Integer rows over (x, y) encoding y <= M * mu_i(x) plus y <= M."""
    rows, rhs = [], []
    for m in memberships:
        constant, coeffs = m.linear_coefficients()
        scaled = [M * c for c in coeffs]
        bound = M * constant
        if any(c.denominator != 1 for c in scaled) or bound.denominator != 1:
            raise AssertionError("scale M failed to clear denominators")
        rows.append(tuple(-int(c) for c in scaled) + (1,))
        rhs.append(int(bound))
    rows.append((0,) * n + (1,))
    rhs.append(M)
    return rows, rhs


def _scaled_box(polytope: CrispPolytope, M: int) -> HyperBox:
    box = bounding_box_L(polytope)
    return HyperBox(box.lo, box.hi[:-1] + (min(box.hi[-1], M),))


def fuzzy_ineq_to_biobjective(problem: FuzzyInequalityProblem) -> ScaledBiobjective:
    """Transform max c x over fuzzified rows into max (c x, y)."""
    _require_valid(problem)
    memberships = build_memberships(problem.rows)
    M = compute_scale_M(memberships)
    rows, rhs = _membership_constraints(memberships, M, problem.n)
    polytope = CrispPolytope(rows, rhs)
    C = (problem.objective + (0,), (0,) * problem.n + (1,))
    moilp = MoilpProblem(polytope, C, _scaled_box(polytope, M))
    return ScaledBiobjective(moilp, M, memberships)


def row_clearing_factor(vector) -> int:
    """Positive integer multiplier turning a rational row into an integer
    one (scaling an objective row never changes dominance)."""
    return lcm_denominators(vector)


def _integer_row(vector) -> tuple:
    sigma = row_clearing_factor(vector)
    return tuple(int(sigma * v) for v in vector)


def _cut_endpoint_rows(coefficients, alphas):
    """Lower rows then upper rows, alpha descending, as rational vectors."""
    lowers, uppers = [], []
    for a in alphas:
        cuts = [alpha_cut(c, a) for c in coefficients]
        lowers.append(tuple(c.lo for c in cuts))
        uppers.append(tuple(c.hi for c in cuts))
    return lowers + uppers


def _reject_lr(coefficients):
    if any(isinstance(c, LRFuzzy) for c in coefficients):
        raise ValueError(
            "LR coefficients must be approximated explicitly first "
            "(see approximate_lr)")


def fuzzy_obj_to_moilp(problem) -> MoilpProblem:
    """Expand a fuzzy objective into 2k cut-endpoint rows over the same
    polytope, k the ranking size.  Rows are kept verbatim (duplicates
    included); use dedup_objectives() before solving if preferred."""
    _require_valid(problem)
    _reject_lr(problem.coefficients)
    alphas = problem.ranking.descending()
    rows = [_integer_row(r)
            for r in _cut_endpoint_rows(problem.coefficients, alphas)]
    box = bounding_box_L(problem.polytope)
    return MoilpProblem(problem.polytope, tuple(rows), box)


def combined_to_moilp(problem) -> ScaledBiobjective:
    """Remark 1/2 route: cut-endpoint rows for every fuzzy objective row
    and ranking level, plus the y objective, over the membership rows."""
    _require_valid(problem)
    for row in problem.objective_rows:
        _reject_lr(row)
    memberships = build_memberships(problem.rows)
    M = compute_scale_M(memberships)
    rows, rhs = _membership_constraints(memberships, M, problem.n)
    polytope = CrispPolytope(rows, rhs)
    objectives = []
    for a in problem.ranking.descending():
        for coeff_row in problem.objective_rows:
            cuts = [alpha_cut(c, a) for c in coeff_row]
            objectives.append(_integer_row(tuple(c.lo for c in cuts)) + (0,))
            objectives.append(_integer_row(tuple(c.hi for c in cuts)) + (0,))
    objectives.append((0,) * problem.n + (1,))
    moilp = MoilpProblem(polytope, tuple(objectives), _scaled_box(polytope, M))
    return ScaledBiobjective(moilp, M, memberships)


def solution_lift(entries, M: int) -> list:
    """Turn nondominated (x, values) pairs of a scaled problem into fuzzy
    solutions.

    The last value component is y; membership is the exact rational y / M
    and zero-membership entries are dropped.
    """
    out = []
    for x, values in entries:
        y = values[-1]
        if not 0 <= y <= M:
            raise ValueError(f"y component {y} outside [0, {M}]")
        if y == 0:
            continue
        out.append(FuzzySolution(tuple(x), tuple(values[:-1]), Fraction(y, M)))
    return out


def lift_scaled(scaled: ScaledBiobjective, nd_entries) -> list:
    """solution_lift with the y variable stripped from each point."""
    stripped = [(x[:-1], values) for x, values in nd_entries]
    return solution_lift(stripped, scaled.scale)
