"""All measures of one set in a single row."""

from __future__ import annotations

from typing import Any, Dict

from ..ball import min_enclosing_ball
from ..config import DEFAULT, Config
from ..gauges import EuclideanBall, inradius
from ..hull import convex_hull
from ..sets import BoxUnion, diam
from .deficit import volume_deficit
from .deviation import effective_stddev_v
from .hausdorff import hausdorff_boxes, hausdorff_from_hull
from .schneider import schneider_c


def measure_suite(a, gauge=None, config: Config = DEFAULT, measures=("delta", "d", "c", "v")) -> Dict[str, Any]:
    """Row with the requested measures plus R(A), diam(A) and inr(conv A).

    A measure that cannot be computed for this input is reported as an
    ``{"error": message}`` entry instead of aborting the row."""
    gauge = gauge or EuclideanBall()
    row: Dict[str, Any] = {}

    def attempt(name, fn):
        try:
            row[name] = fn()
        except (ValueError, RuntimeError, TypeError) as exc:
            row[name] = {"error": str(exc)}

    for name in measures:
        if name == "delta":
            attempt("delta", lambda: volume_deficit(a, config))
        elif name == "d":
            if isinstance(a, BoxUnion):
                attempt("d", lambda: hausdorff_boxes(a))
            else:
                attempt("d", lambda: hausdorff_from_hull(a, gauge, config=config))
        elif name == "c":
            attempt("c", lambda: schneider_c(a, config))
        elif name in ("v", "r"):
            if isinstance(a, BoxUnion):
                row[name] = {"error": "v is computed for finite point sets only"}
            else:
                attempt(name, lambda: effective_stddev_v(a, config))
        else:
            raise ValueError(f"unknown measure {name!r}")
    _, radius = min_enclosing_ball(a)
    row["R"] = radius
    row["diam"] = diam(a)
    hull = convex_hull(a.corners() if isinstance(a, BoxUnion) else a)
    row["inr"] = inradius(hull) if hull.full_dimensional and hull.facets is not None else 0.0
    return row
