"""Measures of the averages A(k) = (A + ... + A)/k along k.

``sequence_report`` tabulates the chosen measures for k = 1..kmax, adds the
rate columns k*c(A(k)) and k*d(A(k)), and records for every measure whether
the column is non-increasing in k (and along powers of two).  A flag is
``True`` or ``False`` only when the comparisons are decided; overlapping
brackets leave it ``None``.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .config import DEFAULT, Config
from .fileio import Report
from .gauges import EuclideanBall
from .measures import effective_stddev_v, hausdorff_boxes, hausdorff_from_hull, schneider_c, volume_deficit
from .sets import BoxUnion, PointSet, average_boxes, iter_average_sets

KNOWN = ("delta", "d", "c", "v")


def _measure(name: str, a, gauge, config: Config):
    if name == "delta":
        return volume_deficit(a, config)
    if name == "d":
        if isinstance(a, BoxUnion):
            return hausdorff_boxes(a)
        return hausdorff_from_hull(a, gauge, config=config)
    if name == "c":
        return schneider_c(a, config)
    if name == "v":
        if isinstance(a, BoxUnion):
            raise ValueError("v is computed for finite point sets only")
        return effective_stddev_v(a, config)
    raise ValueError(f"unknown measure {name!r}; choose from {', '.join(KNOWN)}")


def _cells(name: str, res) -> Dict[str, Any]:
    """Report cells for one measure: the exact value when there is one,
    otherwise the float value with its bracket."""
    out: Dict[str, Any] = {}
    if res.exact is not None:
        out[name] = res.exact
    else:
        out[name] = res.value
        if res.exact_squared is None:
            out[name + "_lower"] = res.lower
            out[name + "_upper"] = res.upper
    if res.exact_squared is not None and res.exact is None:
        out[name + "_squared"] = res.exact_squared
    return out


def _bracket(res) -> Tuple[Any, Any]:
    """(lower, upper), exact rationals where possible; squared values are compared as squares."""
    if res.exact is not None:
        return res.exact, res.exact
    return res.lower, res.upper


def _non_increasing(brackets: Sequence[Tuple[Any, Any]], squares: Sequence[Optional[Fraction]]) -> Optional[bool]:
    decided = True
    for i in range(1, len(brackets)):
        if squares[i] is not None and squares[i - 1] is not None:
            if squares[i] > squares[i - 1]:
                return False
            continue
        (lo_prev, hi_prev), (lo_next, hi_next) = brackets[i - 1], brackets[i]
        if lo_next > hi_prev:
            return False
        if hi_next > lo_prev:
            decided = False
    return True if decided else None


def _averages(a, kmax: int, config: Config):
    if isinstance(a, BoxUnion):
        for k in range(1, kmax + 1):
            yield k, average_boxes(a, k, cap=config.average_cap)
    else:
        yield from iter_average_sets(a, kmax, cap=config.average_cap)


def sequence_report(
    a,
    kmax: int,
    measures: Sequence[str] = ("c", "d", "delta"),
    gauge=None,
    config: Config = DEFAULT,
    command: Optional[Sequence[str]] = None,
) -> Report:
    """Per-k rows of the requested measures of A(k), with rate columns and
    monotonicity flags in ``report.meta``."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    for m in measures:
        if m not in KNOWN:
            raise ValueError(f"unknown measure {m!r}; choose from {', '.join(KNOWN)}")
    if not isinstance(a, (PointSet, BoxUnion)):
        raise TypeError("sequence_report takes a PointSet or a BoxUnion")
    gauge = gauge or EuclideanBall()
    rows: List[Dict[str, Any]] = []
    results: Dict[str, list] = {m: [] for m in measures}
    timings: Dict[str, float] = {}
    for k, ak in _averages(a, kmax, config):
        start = time.perf_counter()
        size = len(ak.points) if isinstance(ak, PointSet) else len(ak.boxes)
        row: Dict[str, Any] = {"k": k, "size": size}
        for m in measures:
            res = _measure(m, ak, gauge, config)
            results[m].append(res)
            row.update(_cells(m, res))
            if m in ("c", "d"):
                row[f"k*{m}"] = k * res.exact if res.exact is not None else k * res.value
        rows.append(row)
        timings[f"k={k}"] = time.perf_counter() - start

    monotone: Dict[str, Optional[bool]] = {}
    powers: Dict[str, Optional[bool]] = {}
    for m, seq in results.items():
        brackets = [_bracket(r) for r in seq]
        squares = [r.squared for r in seq]
        monotone[m] = _non_increasing(brackets, squares)
        idx = [k - 1 for k in (2**j for j in range(kmax.bit_length())) if k <= kmax]
        powers[m] = _non_increasing([brackets[i] for i in idx], [squares[i] for i in idx])
    meta = {
        "kind": "points" if isinstance(a, PointSet) else "boxes",
        "dim": a.dim,
        "kmax": kmax,
        "measures": list(measures),
        "gauge": getattr(gauge, "name", None) or "l2",
        "monotone": monotone,
        "monotone_powers_of_two": powers,
    }
    return Report(list(command or ["sequence"]), rows=rows, meta=meta, timings=timings)
