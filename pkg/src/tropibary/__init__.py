"""Idempotent measures over max-plus, their barycenters, and the
constructive openness machinery around them.

The package is exact end to end: weights and coordinates are rationals
(plus -inf), every lift is verified by recomputing the map it inverts,
and floating point appears only in the exponential metric used to
report distances.
"""

from .approximation import (
    BoxElement,
    Cover,
    IndexElement,
    PolytopeElement,
    cover_approximation,
    cover_pieces,
    refinement_sweep,
)
from .barycenter import barycenter, barycenter_of_measures, barycenter_point
from .core import (
    NEG_INF,
    POS_INF,
    ZERO,
    ConvexParams,
    TropScalar,
    TropVector,
    odot,
    oplus,
    oplus_all,
    point_dist,
    residual,
    rho,
    s_point,
    scalar,
    trop_min,
    vector,
)
from .errors import (
    BadInput,
    BudgetExceeded,
    InconsistentFiber,
    InfeasibleBarycenter,
    NotNormalized,
    OutsideValidityRegion,
    Rejection,
    SchemaError,
    TropibaryError,
)
from .geometry import (
    Box,
    Certificate,
    TropPolytope,
    certify_id_oplus_not_open,
    certify_y_beta_not_open,
    extremal_points,
    hull_membership,
    render_polytope_svg,
)
from .lifting import (
    BoxHost,
    LiftWitness,
    MeasureHost,
    MergeMap,
    brute_force_lift_beta,
    brute_force_lift_box,
    brute_force_lift_interval,
    brute_force_lift_s,
    lift_beta,
    lift_fiber_surjection,
    lift_merge_fiber,
    lift_s_box,
    lift_s_finite,
    lift_s_interval,
    witness_distance,
)
from .measures import (
    DensityTable,
    FiniteSpace,
    FunctionTable,
    IdemMeasure,
    SpaceMap,
    combine,
    eval_measure,
    map_atoms,
    measure_dist,
    pushforward,
)
from .verify import run_all, run_suite

__version__ = "0.1.0"

__all__ = [
    "BadInput",
    "Box",
    "BoxElement",
    "BoxHost",
    "BudgetExceeded",
    "Certificate",
    "ConvexParams",
    "Cover",
    "DensityTable",
    "FiniteSpace",
    "FunctionTable",
    "IdemMeasure",
    "InconsistentFiber",
    "IndexElement",
    "InfeasibleBarycenter",
    "LiftWitness",
    "MeasureHost",
    "MergeMap",
    "NEG_INF",
    "NotNormalized",
    "OutsideValidityRegion",
    "POS_INF",
    "PolytopeElement",
    "Rejection",
    "SchemaError",
    "SpaceMap",
    "TropPolytope",
    "TropScalar",
    "TropVector",
    "TropibaryError",
    "ZERO",
    "barycenter",
    "barycenter_of_measures",
    "barycenter_point",
    "brute_force_lift_beta",
    "brute_force_lift_box",
    "brute_force_lift_interval",
    "brute_force_lift_s",
    "certify_id_oplus_not_open",
    "certify_y_beta_not_open",
    "combine",
    "cover_approximation",
    "cover_pieces",
    "eval_measure",
    "extremal_points",
    "hull_membership",
    "lift_beta",
    "lift_fiber_surjection",
    "lift_merge_fiber",
    "lift_s_box",
    "lift_s_finite",
    "lift_s_interval",
    "map_atoms",
    "measure_dist",
    "odot",
    "oplus",
    "oplus_all",
    "point_dist",
    "pushforward",
    "refinement_sweep",
    "render_polytope_svg",
    "residual",
    "rho",
    "run_all",
    "run_suite",
    "s_point",
    "scalar",
    "trop_min",
    "vector",
    "witness_distance",
]
