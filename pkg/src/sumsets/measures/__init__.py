"""Non-convexity measures: Delta, d^(K), c, v = r and their pointwise forms."""

from .deficit import volume_deficit
from .deviation import (
    effective_stddev_v,
    inner_radius_r,
    pointwise_d,
    pointwise_d_squared,
    pointwise_rho,
    pointwise_rho_squared,
    pointwise_v,
    pointwise_v_squared,
    pointwise_w,
    rho_maximiser_candidates,
)
from .empty_sphere import EmptySphereSimplex, empty_sphere_simplices
from .hausdorff import hausdorff_boxes, hausdorff_from_hull
from .result import MeasureResult
from .schneider import gauge_form_value, schneider_c
from .suite import measure_suite

__all__ = [
    "EmptySphereSimplex",
    "MeasureResult",
    "effective_stddev_v",
    "empty_sphere_simplices",
    "gauge_form_value",
    "hausdorff_boxes",
    "hausdorff_from_hull",
    "inner_radius_r",
    "measure_suite",
    "pointwise_d",
    "pointwise_d_squared",
    "pointwise_rho",
    "pointwise_rho_squared",
    "pointwise_v",
    "pointwise_v_squared",
    "pointwise_w",
    "rho_maximiser_candidates",
    "schneider_c",
    "volume_deficit",
]
