"""Batch front end: problem files in, solution streams and plot data out.

Problem files are JSON; every rational is an integer or a "p/q" string
(decimal floats are rejected so the exact-arithmetic contract holds end
to end).  Output goes to stdout (or --output) in text, newline-delimited
JSON, or CSV; diagnostics go to stderr.  Exit codes: 0 success, 2 schema
or validation failure, 3 guard-limit refusal.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exactmath import format_rational, parse_rational, rat_dot
from .fuzzy import (
    FuzzyNumber,
    Interval,
    LRFuzzy,
    PiecewiseLinear,
    RankingSystem,
    Trapezoidal,
    Triangular,
    alpha_cut_dot,
    approximate_lr,
)
from .genfun import SeriesCountOracle, expand, format_gf, gf_box, gf_interval
from .model import (
    DEFAULT_GUARD,
    CombinedFuzzyProblem,
    CrispPolytope,
    FuzzyInequalityProblem,
    FuzzyObjectiveProblem,
    FuzzyRow,
    GuardLimitError,
    HyperBox,
    MoilpProblem,
    lattice_points,
    make_moilp,
    validate,
)
from .ndenum import ReferenceCountOracle, box_search, nd_bruteforce
from .transform import (
    combined_to_moilp,
    fuzzy_ineq_to_biobjective,
    fuzzy_obj_to_moilp,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_GUARD = 3


class SchemaError(Exception):
    """Problem file failed schema or semantic checks."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class RunConfig:
    method: str = "boxsearch"
    ranking: RankingSystem | None = None
    bound_L: int | None = None
    guard: int = DEFAULT_GUARD
    fmt: str = "text"
    stats: bool = False
    lr_k: int | None = None
    output: str | None = None


# ----------------------------------------------------------------- parsing

def _rational(value, path, errors):
    try:
        return parse_rational(value)
    except ValueError as exc:
        errors.append(f"{path}: {exc}")
        return Fraction(0)


def _integer(value, path, errors):
    if isinstance(value, bool) or not isinstance(value, int):
        errors.append(f"{path}: expected an integer, got {value!r}")
        return 0
    return value


def _int_list(value, path, errors):
    if not isinstance(value, list):
        errors.append(f"{path}: expected a list")
        return ()
    return tuple(_integer(v, f"{path}[{i}]", errors) for i, v in enumerate(value))


def fuzzy_from_json(obj, path, errors) -> FuzzyNumber:
    """Parse one fuzzy number; plain rationals are crisp scalars."""
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        v = _rational(obj, path, errors)
        return Interval(v, v)
    if not isinstance(obj, dict):
        errors.append(f"{path}: expected a fuzzy number object or rational")
        return Interval(0, 0)
    kind = obj.get("kind")
    pts = obj.get("points")
    try:
        if kind == "interval":
            lo, hi = (_rational(p, f"{path}.points", errors) for p in pts)
            return Interval(lo, hi)
        if kind == "triangular":
            a, b, c = (_rational(p, f"{path}.points", errors) for p in pts)
            return Triangular(a, b, c)
        if kind == "trapezoidal":
            a, b, c, d = (_rational(p, f"{path}.points", errors) for p in pts)
            return Trapezoidal(a, b, c, d)
        if kind == "piecewise_linear":
            nodes = [(_rational(z, f"{path}.points", errors),
                      _rational(m, f"{path}.points", errors)) for z, m in pts]
            return PiecewiseLinear(nodes)
        if kind == "lr":
            a0, a1, a2 = (_rational(p, f"{path}.points", errors) for p in pts)
            left = _rational(obj.get("left", 1), f"{path}.left", errors)
            right = _rational(obj.get("right", 1), f"{path}.right", errors)
            return LRFuzzy(a0, a1, a2, left, right)
    except (TypeError, ValueError) as exc:
        errors.append(f"{path}: invalid fuzzy number: {exc}")
        return Interval(0, 0)
    errors.append(f"{path}: unknown fuzzy number kind {kind!r}")
    return Interval(0, 0)


def fuzzy_to_json(f: FuzzyNumber):
    if isinstance(f, Interval):
        if f.lo == f.hi:
            return _rat_json(f.lo)
        return {"kind": "interval", "points": [_rat_json(f.lo), _rat_json(f.hi)]}
    if isinstance(f, Triangular):
        return {"kind": "triangular",
                "points": [_rat_json(v) for v in (f.a1, f.a2, f.a3)]}
    if isinstance(f, Trapezoidal):
        return {"kind": "trapezoidal",
                "points": [_rat_json(v) for v in (f.a1, f.a2, f.a3, f.a4)]}
    if isinstance(f, PiecewiseLinear):
        return {"kind": "piecewise_linear",
                "points": [[_rat_json(z), _rat_json(m)] for z, m in f.points]}
    if isinstance(f, LRFuzzy):
        return {"kind": "lr",
                "points": [_rat_json(v) for v in (f.a0, f.a1, f.a2)],
                "left": _rat_json(f.left_exponent),
                "right": _rat_json(f.right_exponent)}
    raise TypeError(f"cannot serialize {type(f).__name__}")


def _rat_json(value: Fraction):
    return value.numerator if value.denominator == 1 else format_rational(value)


def _fuzzy_rows(data, path, errors):
    rows = []
    if not isinstance(data, list) or not data:
        errors.append(f"{path}: expected a nonempty list of rows")
        return ()
    for i, row in enumerate(data):
        if not isinstance(row, dict):
            errors.append(f"{path}[{i}]: expected a row object")
            continue
        rows.append(FuzzyRow(
            _int_list(row.get("coeffs", []), f"{path}[{i}].coeffs", errors),
            _integer(row.get("rhs", 0), f"{path}[{i}].rhs", errors),
            _integer(row.get("p", 1), f"{path}[{i}].p", errors),
            _integer(row.get("q", 1), f"{path}[{i}].q", errors)))
    return tuple(rows)


def _ranking(data, path, errors) -> RankingSystem:
    if not isinstance(data, list):
        errors.append(f"{path}: expected a list of alpha levels")
        return RankingSystem((Fraction(1),))
    return RankingSystem(tuple(_rational(a, f"{path}[{i}]", errors)
                               for i, a in enumerate(data)))


def _polytope(data, path, errors, n_hint=None) -> CrispPolytope:
    if not isinstance(data, dict):
        errors.append(f"{path}: expected an object with A and b")
        return CrispPolytope((), (), n=n_hint or 1)
    A = data.get("A", [])
    b = data.get("b", [])
    if not isinstance(A, list) or not isinstance(b, list):
        errors.append(f"{path}: A and b must be lists")
        return CrispPolytope((), (), n=n_hint or 1)
    rows = tuple(_int_list(r, f"{path}.A[{i}]", errors) for i, r in enumerate(A))
    rhs = tuple(_integer(v, f"{path}.b[{i}]", errors) for i, v in enumerate(b))
    if rows and len({len(r) for r in rows}) > 1:
        errors.append(f"{path}.A: rows must share one column count")
        return CrispPolytope((), (), n=len(rows[0]))
    if len(rows) != len(rhs):
        errors.append(f"{path}: A and b row counts differ")
        m = min(len(rows), len(rhs))
        rows, rhs = rows[:m], rhs[:m]
    try:
        return CrispPolytope(rows, rhs, n=n_hint if not rows else None)
    except ValueError as exc:
        errors.append(f"{path}: {exc}")
        return CrispPolytope((), (), n=n_hint or 1)


def _box(data, path, errors, n) -> HyperBox | None:
    if data is None:
        return None
    try:
        lo = _int_list(data.get("lo", []), f"{path}.lo", errors)
        hi = _int_list(data.get("hi", []), f"{path}.hi", errors)
        if len(lo) != n or len(hi) != n:
            errors.append(f"{path}: box must have {n} dimensions")
            return None
        return HyperBox(lo, hi)
    except (AttributeError, ValueError) as exc:
        errors.append(f"{path}: {exc}")
        return None


def parse_problem_dict(data: dict):
    """Build a problem object from decoded JSON; raises SchemaError."""
    errors: list = []
    if not isinstance(data, dict):
        raise SchemaError(["top level: expected an object"])
    kind = data.get("kind")
    problem = None
    if kind == "fuzzy_inequality":
        objective = _int_list(data.get("objective", []), "objective", errors)
        rows = _fuzzy_rows(data.get("rows"), "rows", errors)
        if not errors:
            for i, row in enumerate(rows):
                if len(row.coeffs) != len(objective):
                    errors.append(f"rows[{i}]: expected {len(objective)} coefficients")
        if not errors:
            problem = FuzzyInequalityProblem(objective, rows)
    elif kind == "fuzzy_objective":
        coeffs = data.get("objective")
        if not isinstance(coeffs, list) or not coeffs:
            errors.append("objective: expected a nonempty list")
            coeffs = []
        fuzz = tuple(fuzzy_from_json(c, f"objective[{i}]", errors)
                     for i, c in enumerate(coeffs))
        polytope = _polytope(data.get("constraints"), "constraints", errors,
                             n_hint=len(fuzz) or None)
        ranking = _ranking(data.get("ranking"), "ranking", errors)
        if not errors and polytope.n != len(fuzz):
            errors.append("objective length must match the constraint columns")
        if not errors:
            problem = FuzzyObjectiveProblem(polytope, fuzz, ranking)
    elif kind == "combined":
        rows_data = data.get("objective_rows")
        if not isinstance(rows_data, list) or not rows_data:
            errors.append("objective_rows: expected a nonempty list")
            rows_data = []
        obj_rows = tuple(
            tuple(fuzzy_from_json(c, f"objective_rows[{j}][{i}]", errors)
                  for i, c in enumerate(row))
            for j, row in enumerate(rows_data))
        rows = _fuzzy_rows(data.get("rows"), "rows", errors)
        ranking = _ranking(data.get("ranking"), "ranking", errors)
        if not errors:
            n = len(obj_rows[0])
            if any(len(r) != n for r in obj_rows):
                errors.append("objective_rows: rows must share one length")
            if any(len(row.coeffs) != n for row in rows):
                errors.append("rows: coefficient length must match the objective")
        if not errors:
            problem = CombinedFuzzyProblem(obj_rows, rows, ranking)
    elif kind == "moilp":
        polytope = _polytope({"A": data.get("A", []), "b": data.get("b", [])},
                             "", errors)
        C_data = data.get("C")
        if not isinstance(C_data, list) or not C_data:
            errors.append("C: expected a nonempty list of objective rows")
            C_data = []
        C = tuple(_int_list(r, f"C[{i}]", errors) for i, r in enumerate(C_data))
        box = _box(data.get("box"), "box", errors, polytope.n)
        if not errors:
            try:
                problem = make_moilp(polytope, C, box)
            except ValueError as exc:
                errors.append(str(exc))
    elif kind is None:
        errors.append("missing problem kind")
    else:
        errors.append(f"unknown problem kind {kind!r}")
    if errors or problem is None:
        raise SchemaError(errors or ["could not build the problem"])
    return problem


def parse_problem(path):
    """Parse and schema-check a problem file; raises SchemaError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError([f"cannot read {path}: {exc}"])
    try:
        data = json.loads(text, parse_float=_reject_float,
                          parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise SchemaError([f"line {exc.lineno} column {exc.colno}: {exc.msg}"])
    return parse_problem_dict(data)


def _reject_float(token):
    raise SchemaError(
        [f"non-rational literal {token!r}: use integers or 'p/q' strings"])


def serialize_problem(problem) -> dict:
    """Inverse of parse_problem_dict (parse(serialize(p)) == p)."""
    if isinstance(problem, FuzzyInequalityProblem):
        return {"kind": "fuzzy_inequality",
                "objective": list(problem.objective),
                "rows": [{"coeffs": list(r.coeffs), "rhs": r.rhs,
                          "p": r.p, "q": r.q} for r in problem.rows]}
    if isinstance(problem, FuzzyObjectiveProblem):
        return {"kind": "fuzzy_objective",
                "objective": [fuzzy_to_json(c) for c in problem.coefficients],
                "constraints": {"A": [list(r) for r in problem.polytope.A],
                                "b": list(problem.polytope.b)},
                "ranking": [_rat_json(a) for a in problem.ranking]}
    if isinstance(problem, CombinedFuzzyProblem):
        return {"kind": "combined",
                "objective_rows": [[fuzzy_to_json(c) for c in row]
                                   for row in problem.objective_rows],
                "rows": [{"coeffs": list(r.coeffs), "rhs": r.rhs,
                          "p": r.p, "q": r.q} for r in problem.rows],
                "ranking": [_rat_json(a) for a in problem.ranking]}
    if isinstance(problem, MoilpProblem):
        return {"kind": "moilp",
                "A": [list(r) for r in problem.polytope.A],
                "b": list(problem.polytope.b),
                "C": [list(r) for r in problem.C],
                "box": {"lo": list(problem.box.lo), "hi": list(problem.box.hi)}}
    raise TypeError(f"cannot serialize {type(problem).__name__}")


# ------------------------------------------------------------ solution I/O

class SolutionWriter:
    """Streams solution records in the configured format."""

    def __init__(self, fmt: str, stream, x_dim: int, value_count: int):
        self.fmt = fmt
        self.stream = stream
        self.count = 0
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            header = [f"x{i + 1}" for i in range(x_dim)]
            header += [f"value{i + 1}" for i in range(value_count)]
            header.append("membership")
            self._csv.writerow(header)

    def solution(self, x, values, membership: Fraction):
        self.count += 1
        if self.fmt == "json":
            record = {"x": list(x),
                      "values": [_rat_json(Fraction(v)) for v in values],
                      "membership": _rat_json(membership),
                      "membership_approx": float(membership)}
            self.stream.write(json.dumps(record) + "\n")
        elif self.fmt == "csv":
            row = [str(v) for v in x]
            row += [format_rational(Fraction(v)) for v in values]
            row.append(format_rational(membership))
            self._csv.writerow(row)
        else:
            xs = ",".join(str(v) for v in x)
            vs = ",".join(format_rational(Fraction(v)) for v in values)
            ms = format_rational(membership)
            self.stream.write(
                f"x=({xs}) value=({vs}) membership={ms} "
                f"(≈{float(membership):.6g})\n")

    def stats(self, stats):
        if self.fmt == "json":
            self.stream.write(json.dumps({"stats": stats.to_dict()}) + "\n")
        else:
            d = stats.to_dict()
            body = " ".join(f"{k}={v}" for k, v in d.items())
            self.stream.write(f"# stats: {body}\n")

    def summary(self):
        if self.fmt == "text":
            noun = "solution" if self.count == 1 else "solutions"
            self.stream.write(f"{self.count} {noun}\n")


# ----------------------------------------------------------- solve command

def _apply_lr_approximation(problem, cfg: RunConfig):
    """Replace LR coefficients by their k-node polygonal approximations.

    Approximation is an explicit user choice: LR coefficients without
    --lr-k are a validation error.
    """

    def fix_row(row):
        return tuple(approximate_lr(c, cfg.lr_k) if isinstance(c, LRFuzzy) else c
                     for c in row)

    if isinstance(problem, FuzzyObjectiveProblem):
        has_lr = any(isinstance(c, LRFuzzy) for c in problem.coefficients)
        if has_lr and cfg.lr_k is None:
            raise SchemaError(["LR coefficients present: pass --lr-k to pick "
                               "the approximation level"])
        if has_lr:
            return FuzzyObjectiveProblem(problem.polytope,
                                         fix_row(problem.coefficients),
                                         problem.ranking)
    if isinstance(problem, CombinedFuzzyProblem):
        has_lr = any(isinstance(c, LRFuzzy) for row in problem.objective_rows
                     for c in row)
        if has_lr and cfg.lr_k is None:
            raise SchemaError(["LR coefficients present: pass --lr-k to pick "
                               "the approximation level"])
        if has_lr:
            return CombinedFuzzyProblem(
                tuple(fix_row(r) for r in problem.objective_rows),
                problem.rows, problem.ranking)
    return problem


def _apply_ranking_override(problem, cfg: RunConfig):
    if cfg.ranking is None:
        return problem
    if isinstance(problem, FuzzyObjectiveProblem):
        return FuzzyObjectiveProblem(problem.polytope, problem.coefficients,
                                     cfg.ranking)
    if isinstance(problem, CombinedFuzzyProblem):
        return CombinedFuzzyProblem(problem.objective_rows, problem.rows,
                                    cfg.ranking)
    print("note: --ranking ignored for this problem kind", file=sys.stderr)
    return problem


def _apply_bound_override(moilp: MoilpProblem, cfg: RunConfig,
                          y_cap: int | None = None) -> MoilpProblem:
    """Replace the search box by [0, L]^n; a structural y cap (last
    dimension of transformed problems) is preserved.  Validation of the
    resulting problem still checks containment."""
    if cfg.bound_L is None:
        return moilp
    hi = [cfg.bound_L] * moilp.n
    if y_cap is not None:
        hi[-1] = min(cfg.bound_L, y_cap)
    box = HyperBox((0,) * moilp.n, tuple(hi))
    return MoilpProblem(moilp.polytope, moilp.C, box)


def _fuzzy_obj_values(coefficients, ranking: RankingSystem, x):
    """Exact cut-endpoint values in transform row order (lowers then
    uppers, alpha descending)."""
    lows, highs = [], []
    for a in ranking.descending():
        cut = alpha_cut_dot(coefficients, x, a)
        lows.append(cut.lo)
        highs.append(cut.hi)
    return tuple(lows + highs)


def _combined_values(problem: CombinedFuzzyProblem, x):
    """Exact cut values in combined row order (per alpha descending, per
    objective row: lower then upper)."""
    out = []
    for a in problem.ranking.descending():
        for row in problem.objective_rows:
            cut = alpha_cut_dot(row, x, a)
            out.append(cut.lo)
            out.append(cut.hi)
    return tuple(out)


def _solve_setup(problem, cfg: RunConfig):
    """Returns (solve_moilp, display) where display maps a solver point to
    (x, values, membership) or None when the point is filtered."""
    one = Fraction(1)
    if isinstance(problem, MoilpProblem):
        raw = _apply_bound_override(problem, cfg)
        return raw, lambda x: (x, raw.values(x), one), raw.n, raw.k
    if isinstance(problem, FuzzyInequalityProblem):
        scaled = fuzzy_ineq_to_biobjective(problem)
        moilp = _apply_bound_override(scaled.moilp, cfg, y_cap=scaled.scale)
        M = scaled.scale
        c = problem.objective

        def display(x):
            y = x[-1]
            if y == 0:
                return None
            return (x[:-1], (rat_dot(c, x[:-1]),), Fraction(y, M))

        return moilp, display, moilp.n - 1, 1
    if isinstance(problem, FuzzyObjectiveProblem):
        moilp = _apply_bound_override(fuzzy_obj_to_moilp(problem), cfg)

        def display(x):
            return (x, _fuzzy_obj_values(problem.coefficients,
                                         problem.ranking, x), one)

        return moilp, display, moilp.n, 2 * len(problem.ranking.alphas)
    if isinstance(problem, CombinedFuzzyProblem):
        scaled = combined_to_moilp(problem)
        moilp = _apply_bound_override(scaled.moilp, cfg, y_cap=scaled.scale)
        M = scaled.scale

        def display(x):
            y = x[-1]
            if y == 0:
                return None
            return (x[:-1], _combined_values(problem, x[:-1]), Fraction(y, M))

        return (moilp, display, moilp.n - 1,
                2 * len(problem.ranking.alphas) * problem.k)
    raise TypeError(f"cannot solve {type(problem).__name__}")


def cmd_solve(problem, cfg: RunConfig, stream) -> int:
    problem = _apply_ranking_override(problem, cfg)
    problem = _apply_lr_approximation(problem, cfg)
    violations = validate(problem, cfg.guard)
    if violations:
        for v in violations:
            print(f"invalid problem: {v}", file=sys.stderr)
        return EXIT_INVALID
    moilp, display, x_dim, value_count = _solve_setup(problem, cfg)
    violations = validate(moilp, cfg.guard)
    if violations:
        for v in violations:
            print(f"invalid transformed problem: {v}", file=sys.stderr)
        return EXIT_INVALID
    writer = SolutionWriter(cfg.fmt, stream, x_dim, value_count)
    solver_problem = moilp.dedup_objectives()
    stats = None
    if cfg.method == "brute":
        nd = nd_bruteforce(solver_problem, cfg.guard)
        for x, _ in nd.sorted_by_value_desc():
            record = display(x)
            if record is not None:
                writer.solution(*record)
    else:
        if cfg.method == "genfun":
            oracle = SeriesCountOracle(solver_problem, guard=cfg.guard)
        else:
            oracle = ReferenceCountOracle(solver_problem, cfg.guard)

        def emit(x, _values):
            record = display(x)
            if record is not None:
                writer.solution(*record)

        _, stats = box_search(solver_problem, oracle, emit=emit)
    writer.summary()
    if cfg.stats:
        if stats is None:
            print("note: --stats needs method boxsearch or genfun",
                  file=sys.stderr)
        else:
            writer.stats(stats)
    return EXIT_OK


# ------------------------------------------------------- transform command

def _linear_expr(coeffs, names) -> str:
    parts = []
    for c, name in zip(coeffs, names):
        if c == 0:
            continue
        term = name if abs(c) == 1 else f"{abs(c)}{name}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def _membership_constraint_text(row, rhs, names) -> str:
    """Render (a | 1) . (x, y) <= rhs as y <= rhs - a . x."""
    parts = [str(rhs)]
    for c, name in zip(row[:-1], names):
        if c == 0:
            continue
        term = name if abs(c) == 1 else f"{abs(c)}{name}"
        parts.append(("- " if c > 0 else "+ ") + term)
    return "y <= " + " ".join(parts)


def cmd_transform(problem, cfg: RunConfig, stream) -> int:
    problem = _apply_ranking_override(problem, cfg)
    problem = _apply_lr_approximation(problem, cfg)
    violations = validate(problem, cfg.guard)
    if violations:
        for v in violations:
            print(f"invalid problem: {v}", file=sys.stderr)
        return EXIT_INVALID
    names = None
    if isinstance(problem, MoilpProblem):
        moilp, M = problem, None
    elif isinstance(problem, FuzzyInequalityProblem):
        scaled = fuzzy_ineq_to_biobjective(problem)
        moilp, M = scaled.moilp, scaled.scale
        names = [f"x{i + 1}" for i in range(problem.n)]
    elif isinstance(problem, FuzzyObjectiveProblem):
        moilp, M = fuzzy_obj_to_moilp(problem), None
    else:
        scaled = combined_to_moilp(problem)
        moilp, M = scaled.moilp, scaled.scale
        names = [f"x{i + 1}" for i in range(problem.n)]
    if cfg.fmt == "json":
        record = {"kind": "moilp",
                  "A": [list(r) for r in moilp.polytope.A],
                  "b": list(moilp.polytope.b),
                  "C": [list(r) for r in moilp.C],
                  "box": {"lo": list(moilp.box.lo), "hi": list(moilp.box.hi)}}
        if M is not None:
            record["M"] = M
        stream.write(json.dumps(record) + "\n")
        return EXIT_OK
    var_names = [f"x{i + 1}" for i in range(moilp.n)]
    if M is not None:
        var_names[-1] = "y"
        stream.write(f"M = {M}\n")
    objectives = ", ".join(_linear_expr(row, var_names) for row in moilp.C)
    stream.write(f"maximize: ({objectives})\n")
    stream.write("subject to:\n")
    for row, rhs in zip(moilp.polytope.A, moilp.polytope.b):
        if M is not None and row[-1] == 1 and all(c == 0 for c in row[:-1]):
            continue  # the y cap is reported with the bounds
        if M is not None and row[-1] == 1:
            stream.write("  " + _membership_constraint_text(row, rhs, names) + "\n")
        else:
            stream.write(f"  {_linear_expr(row, var_names)} <= {rhs}\n")
    if M is not None:
        stream.write(f"  y in [0, {M}] integer\n")
    stream.write("  x >= 0 integer\n")
    box = moilp.box
    pretty_box = " x ".join(f"[{l},{h}]" for l, h in zip(box.lo, box.hi))
    stream.write(f"box: {pretty_box}\n")
    return EXIT_OK


# ------------------------------------------------------- plot-data command

def _region_csv(path: Path, points, dim: int):
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"x{i + 1}" for i in range(dim)])
        for x in points:
            writer.writerow([str(v) for v in x])


def cmd_plot_data(problem, cfg: RunConfig, stream) -> int:
    problem = _apply_ranking_override(problem, cfg)
    problem = _apply_lr_approximation(problem, cfg)
    violations = validate(problem, cfg.guard)
    if violations:
        for v in violations:
            print(f"invalid problem: {v}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.output is None:
        print("plot-data requires --output DIRECTORY", file=sys.stderr)
        return EXIT_INVALID
    # Crisp region, expanded region (membership level 0), crisp-level
    # region (membership level 1), and the nondominated points.
    n = problem.n
    if isinstance(problem, (FuzzyInequalityProblem, CombinedFuzzyProblem)):
        crisp = CrispPolytope([r.coeffs for r in problem.rows],
                              [r.rhs for r in problem.rows])
        # a x <= b + q/p cleared to integers: p a x <= p b + q.
        expanded = CrispPolytope(
            [tuple(row.p * c for c in row.coeffs) for row in problem.rows],
            [row.p * row.rhs + row.q for row in problem.rows])
    else:
        crisp = expanded = problem.polytope
    if n > 3:
        print(f"plot-data supports at most 3 variables, got {n}",
              file=sys.stderr)
        return EXIT_INVALID
    moilp, display, x_dim, _ = _solve_setup(problem, cfg)
    violations = validate(moilp, cfg.guard)
    if violations:
        for v in violations:
            print(f"invalid transformed problem: {v}", file=sys.stderr)
        return EXIT_INVALID
    x_box = HyperBox(moilp.box.lo[:n], moilp.box.hi[:n])
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    crisp_points = lattice_points(crisp, x_box, cfg.guard)
    _region_csv(out / "crisp_lattice.csv", crisp_points, n)
    _region_csv(out / "region_level0.csv",
                lattice_points(expanded, x_box, cfg.guard), n)
    _region_csv(out / "region_level1.csv", crisp_points, n)
    nd = nd_bruteforce(moilp.dedup_objectives(), cfg.guard)
    with (out / "nd_points.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"x{i + 1}" for i in range(x_dim)] + ["membership"])
        for x, _ in nd.sorted_by_value_desc():
            record = display(x)
            if record is None:
                continue
            px, _, membership = record
            writer.writerow([str(v) for v in px] + [format_rational(membership)])
    stream.write(f"wrote 4 csv files to {out}\n")
    return EXIT_OK


# --------------------------------------------------------- gf-demo command

def _parse_box_spec(spec: str) -> HyperBox:
    los, his = [], []
    for part in spec.split(","):
        lo_text, _, hi_text = part.partition(":")
        los.append(int(lo_text))
        his.append(int(hi_text))
    return HyperBox(tuple(los), tuple(his))


def cmd_gf_demo(interval_n: int, box_spec: str, stream) -> int:
    g = gf_interval(interval_n)
    stream.write(f"gf_interval({interval_n}) = {format_gf(g)}\n")
    window = HyperBox((0,), (max(2 * interval_n, 10),))
    series = expand(g, window)
    expected = interval_n + 1
    stream.write(f"expansion over [0,{window.hi[0]}]: {series.count()} points "
                 f"(expected {expected})\n")
    if series.count() != expected or not series.is_zero_one():
        raise RuntimeError("interval expansion does not match its indicator")
    box = _parse_box_spec(box_spec)
    gb = gf_box(box)
    stream.write(f"gf_box({box_spec}) = {format_gf(gb, name='x')}\n")
    series = expand(gb, box)
    stream.write(f"expansion count: {series.count()} points "
                 f"(expected {box.volume()})\n")
    if series.count() != box.volume() or not series.is_zero_one():
        raise RuntimeError("box expansion does not match its indicator")
    stream.write("counts verified: OK\n")
    return EXIT_OK


# ------------------------------------------------------------------ driver

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyip",
        description="Fuzzy integer programming via crisp multiobjective "
                    "enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_method=True):
        p.add_argument("problem", help="problem JSON file")
        if with_method:
            p.add_argument("--method", choices=("brute", "boxsearch", "genfun"),
                           default="boxsearch")
        p.add_argument("--ranking", help="override ranking levels, e.g. 1/2,1")
        p.add_argument("--lr-k", type=int, dest="lr_k",
                       help="polygonal approximation level for LR coefficients")
        p.add_argument("--bound-L", type=int, dest="bound_L",
                       help="override the derived search bound L")
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD,
                       help="enumeration guard (candidate point budget)")
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="text", dest="fmt")
        p.add_argument("--stats", action="store_true",
                       help="report delay statistics after solving")
        p.add_argument("--output", help="output file (solve) or directory "
                                        "(plot-data)")

    common(sub.add_parser("solve", help="enumerate the fuzzy solution set"))
    common(sub.add_parser("transform",
                          help="print the crisp multiobjective program"))
    common(sub.add_parser("plot-data", help="emit CSV plot inputs"),
           with_method=False)
    demo = sub.add_parser("gf-demo", help="print generating functions in "
                                          "paper notation and verify counts")
    demo.add_argument("--interval", type=int, default=5, metavar="N")
    demo.add_argument("--box", default="0:2,0:3",
                      help="box spec lo:hi per dimension, comma separated")
    return parser


def _config_from_args(args) -> RunConfig:
    ranking = None
    if getattr(args, "ranking", None):
        levels = sorted({parse_rational(tok.strip())
                         for tok in args.ranking.split(",") if tok.strip()})
        ranking = RankingSystem(tuple(levels))
        ranking.require_valid()
    return RunConfig(
        method=getattr(args, "method", "boxsearch"),
        ranking=ranking,
        bound_L=getattr(args, "bound_L", None),
        guard=args.guard,
        fmt=args.fmt,
        stats=args.stats,
        lr_k=getattr(args, "lr_k", None),
        output=getattr(args, "output", None),
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gf-demo":
            return cmd_gf_demo(args.interval, args.box, sys.stdout)
        cfg = _config_from_args(args)
        problem = parse_problem(args.problem)
        if args.command == "solve" and cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                return cmd_solve(problem, cfg, fh)
        if args.command == "solve":
            return cmd_solve(problem, cfg, sys.stdout)
        if args.command == "transform":
            return cmd_transform(problem, cfg, sys.stdout)
        return cmd_plot_data(problem, cfg, sys.stdout)
    except SchemaError as exc:
        for message in exc.errors:
            print(f"schema error: {message}", file=sys.stderr)
        return EXIT_INVALID
    except GuardLimitError as exc:
        print(f"guard limit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
