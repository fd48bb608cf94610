"""Fuzzy integer programming via crisp multiobjective enumeration.

Fuzzy inequality systems and fuzzy objective coefficients are reduced to
crisp multiobjective integer programs whose complete nondominated sets
are enumerated exactly, either by brute force, by recursive hypercube
subdivision driven by a count oracle, or through an explicit windowed
generating-function pipeline.
"""

from .exactmath import Rational, format_rational, lcm_denominators, parse_rational, rat_dot
from .fuzzy import (
    AlphaCut,
    FuzzyNumber,
    Interval,
    LRFuzzy,
    PiecewiseLinear,
    RankingSystem,
    Trapezoidal,
    Triangular,
    alpha_cut,
    alpha_cut_dot,
    approximate_lr,
    crisp,
    membership_at,
)
from .genfun import (
    GfSum,
    GfTerm,
    MonomialSeries,
    SeriesCountOracle,
    expand,
    feasible_series,
    format_gf,
    gf_box,
    gf_interval,
    hadamard,
    nd_series,
)
from .model import (
    CombinedFuzzyProblem,
    CrispPolytope,
    FuzzyInequalityProblem,
    FuzzyObjectiveProblem,
    FuzzyRow,
    FuzzySolution,
    GuardLimitError,
    HyperBox,
    MoilpProblem,
    bounding_box_L,
    make_moilp,
    validate,
)
from .ndenum import (
    DelayStats,
    NdSet,
    ReferenceCountOracle,
    box_search,
    count_nd_in_box,
    dominates,
    enumerate_lattice,
    extract_unique,
    nd_bruteforce,
)
from .transform import (
    LinearMembership,
    ScaledBiobjective,
    build_memberships,
    combined_to_moilp,
    compute_scale_M,
    fuzzy_ineq_to_biobjective,
    fuzzy_obj_to_moilp,
    solution_lift,
)

__version__ = "0.1.0"
