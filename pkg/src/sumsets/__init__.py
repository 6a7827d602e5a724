"""Exact tools for measuring how far Minkowski sums and averages of sets
are from convex.

Sets are finite point sets (:class:`PointSet`) or finite unions of
axis-parallel boxes (:class:`BoxUnion`) with rational coordinates.  The
measures (volume deficit, Hausdorff distance to the hull, Schneider's index,
effective standard deviation) are computed exactly where the geometry
allows it and as certified brackets elsewhere.  The ``verify`` subpackage
checks the known inequalities between them on seeded random instances and
rebuilds the known counterexamples.
"""

from .config import Config
from .convexify import BalanceResult, NotInSumOfHulls, SFDecomposition, balance_signs, sf_decompose
from .fileio import InputError, Report, dump_set, load_set, parse_points_csv, parse_set_json
from .gauges import EuclideanBall, PolytopeGauge, lp_ball, parse_gauge
from .geometry import volume
from .hull import Polytope, convex_hull
from .lp import ConvexCombination, LinearProgram, in_hull
from .measures import (
    MeasureResult,
    effective_stddev_v,
    hausdorff_boxes,
    hausdorff_from_hull,
    inner_radius_r,
    measure_suite,
    schneider_c,
    volume_deficit,
)
from .plot import emit_plot
from .reports import VerifierReport
from .sequence import sequence_report
from .sets import BoxUnion, CapExceeded, PointSet, average_boxes, average_set, minkowski_sum, sum_of_sets

__version__ = "0.1.0"

__all__ = [
    "BalanceResult",
    "BoxUnion",
    "CapExceeded",
    "Config",
    "ConvexCombination",
    "EuclideanBall",
    "InputError",
    "LinearProgram",
    "MeasureResult",
    "NotInSumOfHulls",
    "PointSet",
    "Polytope",
    "PolytopeGauge",
    "Report",
    "SFDecomposition",
    "VerifierReport",
    "average_boxes",
    "average_set",
    "balance_signs",
    "convex_hull",
    "dump_set",
    "effective_stddev_v",
    "emit_plot",
    "hausdorff_boxes",
    "hausdorff_from_hull",
    "in_hull",
    "inner_radius_r",
    "load_set",
    "lp_ball",
    "measure_suite",
    "minkowski_sum",
    "parse_gauge",
    "parse_points_csv",
    "parse_set_json",
    "schneider_c",
    "sequence_report",
    "sf_decompose",
    "sum_of_sets",
    "volume",
    "volume_deficit",
]
