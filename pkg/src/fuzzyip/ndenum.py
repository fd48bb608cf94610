"""Nondominated-set computation: lattice enumeration, a brute-force
reference, and recursive hypercube subdivision driven by a count oracle.

The subdivision search mirrors the binary-search scheme for multiobjective
programs: count the nondominated solutions inside a box, prune empty
boxes, recurse into boxes holding several, and pin down a unique solution
by per-coordinate binary search on oracle counts alone.  Delay is measured
in oracle calls between consecutive outputs, which keeps the polynomial
bound machine-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol

from .model import (
    DEFAULT_GUARD,
    CrispPolytope,
    HyperBox,
    MoilpProblem,
    lattice_points,
)


class NdCountOracle(Protocol):
    """Counts globally nondominated solutions inside a box."""

    def count_in_box(self, box: HyperBox) -> int: ...


class OracleInconsistencyError(RuntimeError):
    """A box count disagreed with the sum over its children."""


@dataclass
class DelayStats:
    """Operation counters for one subdivision-search run.

    max_delay_calls is the largest number of oracle calls between
    consecutive outputs, counting the stretch before the first output and
    the tail after the last one.
    """

    oracle_calls: int = 0
    boxes_visited: int = 0
    outputs: int = 0
    max_delay_calls: int = 0
    _last_emit_calls: int = field(default=0, repr=False)

    def note_emit(self):
        self.outputs += 1
        gap = self.oracle_calls - self._last_emit_calls
        self.max_delay_calls = max(self.max_delay_calls, gap)
        self._last_emit_calls = self.oracle_calls

    def finish(self):
        gap = self.oracle_calls - self._last_emit_calls
        self.max_delay_calls = max(self.max_delay_calls, gap)

    def to_dict(self) -> dict:
        return {
            "oracle_calls": self.oracle_calls,
            "boxes_visited": self.boxes_visited,
            "outputs": self.outputs,
            "max_delay_calls": self.max_delay_calls,
        }


@dataclass(frozen=True)
class NdSet:
    """Insertion-ordered nondominated solutions as (x, values) pairs."""

    entries: tuple

    def points(self) -> tuple:
        return tuple(x for x, _ in self.entries)

    def as_set(self) -> frozenset:
        return frozenset(self.entries)

    def sorted_by_value_desc(self) -> tuple:
        return tuple(sorted(self.entries, key=lambda e: e[1], reverse=True))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def enumerate_lattice(polytope: CrispPolytope, box: HyperBox,
                      guard: int = DEFAULT_GUARD) -> list:
    """Lattice points of the box satisfying A x <= b (and x >= 0), in
    lexicographic order.

    Refuses boxes whose raw volume exceeds the guard.
    """
    return lattice_points(polytope, box, guard)


def dominates(u, v) -> bool:
    """True when value vector u dominates v under maximization."""
    if len(u) != len(v):
        raise ValueError("value vectors must have equal length")
    return u != v and all(a >= b for a, b in zip(u, v))


def maximal_values(values):
    """Maximal elements of a collection of value vectors (duplicates ok)."""
    unique = sorted(set(values), reverse=True)
    maximal = []
    for v in unique:
        if not any(dominates(w, v) for w in maximal):
            maximal.append(v)
    return set(maximal)


def nd_bruteforce(problem: MoilpProblem, guard: int = DEFAULT_GUARD) -> NdSet:
    """The nondominated set by exhaustive enumeration, lex-ordered.

    Points sharing a maximal value vector are all retained.
    """
    feasible = enumerate_lattice(problem.polytope, problem.box, guard)
    values = [problem.values(x) for x in feasible]
    maximal = maximal_values(values)
    entries = tuple((x, v) for x, v in zip(feasible, values) if v in maximal)
    return NdSet(entries)


class ReferenceCountOracle:
    """Count oracle backed by one cached brute-force nondominated set."""

    def __init__(self, problem: MoilpProblem, guard: int = DEFAULT_GUARD):
        self.problem = problem
        self.nd = nd_bruteforce(problem, guard)
        self._points = self.nd.points()

    def count_in_box(self, box: HyperBox) -> int:
        return sum(1 for x in self._points if box.contains(x))


_ND_CACHE: dict = {}


def count_nd_in_box(box: HyperBox, problem: MoilpProblem,
                    guard: int = DEFAULT_GUARD) -> int:
    """Reference oracle as a function; the problem's nondominated set is
    computed once and cached."""
    oracle = _ND_CACHE.get(problem)
    if oracle is None:
        oracle = ReferenceCountOracle(problem, guard)
        _ND_CACHE[problem] = oracle
    return oracle.count_in_box(box)


def extract_unique(box: HyperBox, oracle, count: int | None = None) -> tuple:
    """Locate the unique nondominated point of a count-1 box.

    Per-coordinate binary search using only oracle counts; at most
    sum_i ceil(log2(side_i)) calls beyond the optional initial count.
    """
    if count is None:
        count = oracle.count_in_box(box)
    if count != 1:
        raise ValueError(f"extract_unique needs a count-1 box, got {count}")
    lo, hi = list(box.lo), list(box.hi)
    for i in range(box.dim):
        while lo[i] < hi[i]:
            mid = (lo[i] + hi[i]) // 2
            left_hi = hi.copy()
            left_hi[i] = mid
            if oracle.count_in_box(HyperBox(tuple(lo), tuple(left_hi))) == 1:
                hi[i] = mid
            else:
                lo[i] = mid + 1
    return tuple(lo)


class _CountingOracle:
    """Wraps an oracle so every call is charged to the run's stats."""

    def __init__(self, oracle, stats: DelayStats):
        self._oracle = oracle
        self._stats = stats

    def count_in_box(self, box: HyperBox) -> int:
        self._stats.oracle_calls += 1
        return self._oracle.count_in_box(box)


def box_search(problem: MoilpProblem, oracle, emit=None,
               box: HyperBox | None = None):
    """Depth-first subdivision search emitting each nondominated solution
    exactly once.

    Children are visited in lexicographic low-half-first order, so the
    output order is deterministic.  Returns (NdSet, DelayStats).

    Raises OracleInconsistencyError when a box count disagrees with the
    sum over its children.
    """
    stats = DelayStats()
    counting = _CountingOracle(oracle, stats)
    root = box if box is not None else problem.box
    found = []

    def produce(x):
        entry = (x, problem.values(x))
        found.append(entry)
        stats.note_emit()
        if emit is not None:
            emit(*entry)

    def visit(node: HyperBox, count: int):
        if count == 1:
            produce(extract_unique(node, counting, count=1))
            return
        children = node.split()
        if not children:
            raise OracleInconsistencyError(
                f"single-point box {node} reported count {count}")
        counts = []
        for child in children:
            stats.boxes_visited += 1
            counts.append(counting.count_in_box(child))
        if sum(counts) != count:
            raise OracleInconsistencyError(
                f"box {node} count {count} != children sum {sum(counts)}")
        for child, c in zip(children, counts):
            if c > 0:
                visit(child, c)

    stats.boxes_visited += 1
    total = counting.count_in_box(root)
    if total > 0:
        visit(root, total)
    stats.finish()
    return NdSet(tuple(found)), stats


def delay_bound(box: HyperBox) -> int:
    """Oracle-call delay bound for a subdivision search on this box:
    2^d * d * ceil(log2(max side)) + sum_i ceil(log2(side_i))."""
    sides = box.sides()
    d = box.dim
    depth = math.ceil(math.log2(max(sides))) if max(sides) > 1 else 1
    extract = sum(math.ceil(math.log2(s)) for s in sides if s > 1)
    return 2 ** d * d * depth + extract
