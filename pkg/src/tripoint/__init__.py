"""Three-points contractions on finite metric spaces.

Single-valued maps are checked against comparison functions over three
distances; set-valued maps against the Hausdorff-based classes.  Orbits are
run with their explicit error bounds, and fixed points are enumerated.
"""
from .errors import DomainError, StructuralError, TripointError
from .hausdorff import hausdorff_distance, set_diameter_distance, set_distance, subset
from .multi import (
    MultiClass,
    MultiMap,
    check_condition_i_multi,
    class_inclusion_check,
    enumerate_fixed_points_multi,
    multi_orbit,
    multi_triple_lhs,
    verify_nadler,
    verify_three_point_multi,
)
from .phifun import (
    ArctanPiecewise,
    ComparisonFunction,
    Linear,
    LogHalf,
    Tabulated,
    certify_phi,
    phi_eval,
    phi_iterate,
    phi_tail_bound,
)
from .reports import ContractionReport
from .sampled import SampledDomain, sampled_ratio_scan
from .single import (
    SingleMap,
    check_no_two_cycles,
    enumerate_fixed_points_single,
    fit_min_lambda,
    picard_orbit,
    triple_lhs_rhs,
    verify_banach,
    verify_three_point_single,
)
from .spaces import (
    DistanceTable,
    Kind,
    PointSpace,
    TriMetricSpace,
    comparability_kappa,
    discrete_table,
    euclidean_table,
    validate_distance_table,
)

__version__ = "0.1.0"
