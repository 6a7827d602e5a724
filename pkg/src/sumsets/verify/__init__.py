"""Verifiers for the inequalities about Minkowski sums, plus a name-keyed
registry of seeded batch runners used by the ``verify`` command.

A runner takes ``(seed, trials, params)`` and returns one combined
:class:`~sumsets.reports.VerifierReport`.  ``params`` holds strings from the
command line; each runner parses the keys it knows and rejects the rest.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence

from ..reports import VerifierReport, combine
from ..sets import BoxUnion
from . import generators
from .counterexamples import (
    block_cubes,
    counterexample_dyn_farkhi,
    counterexample_thm_nonmonotone,
    dyn_farkhi_sets,
    simplex_halfsum_ratio,
    threshold_dimension,
)
from .laws import (
    schneider_two_point_sequence,
    hausdorff_gauge_sandwich,
    inclusion_monotone,
    line_identity,
    radius_relations,
    sqrt_sum_report,
    verify_c_laws,
    verify_containment_rate,
    verify_d_laws,
    verify_v_laws,
)
from .volumes import (
    FractionalPartition,
    random_fractional_partition,
    verify_1d_superadditivity,
    verify_1d_supermod_with_hull,
    verify_average_growth,
    verify_det_supermodularity,
    verify_fractional_superadditivity,
    verify_projection_monotone,
    verify_refined_superadditivity,
    verify_supermodularity_convex,
    verify_supermodularity_counterexample,
)

Runner = Callable[[int, int, Mapping[str, str]], VerifierReport]


class _Params:
    """Typed access to ``key=value`` strings, refusing keys nobody read."""

    def __init__(self, raw: Mapping[str, str]):
        self.raw = dict(raw)
        self.used = set()

    def int(self, key: str, default: int) -> int:
        self.used.add(key)
        return int(self.raw[key]) if key in self.raw else default

    def fraction(self, key: str, default) -> Fraction:
        self.used.add(key)
        return Fraction(self.raw[key]) if key in self.raw else Fraction(default)

    def text(self, key: str, default: str) -> str:
        self.used.add(key)
        return self.raw.get(key, default)

    def finish(self, name: str) -> None:
        unknown = set(self.raw) - self.used
        if unknown:
            raise ValueError(f"verifier {name!r} does not take parameter(s) {sorted(unknown)}")


def _batch(name: str, seed: int, trials: int, make: Callable, workers: int = 1) -> VerifierReport:
    """Run ``make(rng)`` ``trials`` times from one seeded stream; the instances
    are drawn in order first so the outcome does not depend on scheduling."""
    rng = generators.rng_for(seed)
    jobs = [make(rng) for _ in range(trials)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda job: job(), jobs))
    else:
        results = [job() for job in jobs]
    report = combine(name, results, instance={"trials": trials})
    report.seed = seed
    return report


def _single(report: VerifierReport, seed: Optional[int]) -> VerifierReport:
    report.seed = seed
    return report


# -- volume inequalities -------------------------------------------------------


def _run_superadditivity_1d(seed, trials, raw):
    p = _Params(raw)
    k, count = p.int("k", 3), p.int("intervals", 3)
    p.finish("superadditivity-1d")

    def make(rng):
        sets = [generators.interval_union(rng, count) for _ in range(k)]
        return lambda: verify_1d_superadditivity(sets)

    return _batch("superadditivity-1d", seed, trials, make)


def _run_superadditivity(seed, trials, raw):
    p = _Params(raw)
    k, dim, count = p.int("k", 3), p.int("dim", 2), p.int("boxes", 2)
    p.finish("superadditivity")

    def make(rng):
        sets = [generators.box_union(rng, dim, count) for _ in range(k)]
        return lambda: verify_refined_superadditivity(sets)

    return _batch("superadditivity", seed, trials, make)


def _run_average_growth(seed, trials, raw):
    p = _Params(raw)
    k, dim, count = p.int("k", 3), p.int("dim", 2), p.int("boxes", 2)
    p.finish("average-growth")

    def make(rng):
        u = generators.box_union(rng, dim, count)
        return lambda: verify_average_growth(u, k)

    return _batch("average-growth", seed, trials, make)


def _run_supermodularity(seed, trials, raw):
    p = _Params(raw)
    dim = p.int("dim", 2)
    p.finish("supermodularity")

    def make(rng):
        triple = [generators.box(rng, dim) for _ in range(3)]
        return lambda: verify_supermodularity_convex(*triple)

    return _batch("supermodularity", seed, trials, make)


def _run_supermod_counterexample(seed, trials, raw):
    _Params(raw).finish("supermodularity-counterexample")
    return _single(verify_supermodularity_counterexample(), seed)


def _run_supermod_hull(seed, trials, raw):
    _Params(raw).finish("supermodularity-hull")
    return _single(verify_1d_supermod_with_hull(), seed)


def _run_det(seed, trials, raw):
    p = _Params(raw)
    n = p.int("n", 3)
    p.finish("det-supermodularity")

    def make(rng):
        mats = [generators.psd_matrix(rng, n, rng.randint(0, n)) for _ in range(3)]
        return lambda: verify_det_supermodularity(*mats)

    return _batch("det-supermodularity", seed, trials, make)


def _run_fractional(seed, trials, raw):
    p = _Params(raw)
    k, dim = p.int("k", 4), p.int("dim", 2)
    p.finish("fractional-superadditivity")

    def make(rng):
        boxes = [generators.box(rng, dim) for _ in range(k)]
        fp = random_fractional_partition(rng, k)
        return lambda: verify_fractional_superadditivity(boxes, fp)

    return _batch("fractional-superadditivity", seed, trials, make)


def staircase(rng, steps: int) -> BoxUnion:
    """Boxes standing on a common floor y = 0 with consecutive x-ranges, so the
    shadow on the x-axis is a full interval."""
    xs = sorted({generators.rational(rng, 0, 2) for _ in range(steps + 1)} | {Fraction(0), Fraction(2)})
    boxes = []
    for lo, hi in zip(xs, xs[1:]):
        boxes.append(((lo, Fraction(0)), (hi, generators.rational(rng, 0, 2) + Fraction(1, 64))))
    return BoxUnion(boxes)


def _run_projection(seed, trials, raw):
    p = _Params(raw)
    kmax, steps = p.int("kmax", 4), p.int("steps", 3)
    p.finish("projection")

    def make(rng):
        u = staircase(rng, steps)
        return lambda: verify_projection_monotone(u, axis=1, kmax=kmax)

    return _batch("projection", seed, trials, make)


# -- measures under sums ---------------------------------------------------------


def _run_c_laws(seed, trials, raw):
    p = _Params(raw)
    k, size = p.int("k", 2), p.int("size", 4)
    p.finish("c-laws")

    def make(rng):
        a = generators.point_set(rng, 2, size)
        return lambda: verify_c_laws([a], k)

    return _batch("c-laws", seed, trials, make)


def _run_c_two_point(seed, trials, raw):
    p = _Params(raw)
    kmax = p.int("kmax", 64)
    p.finish("c-two-point")
    return _single(schneider_two_point_sequence(kmax), seed)


def _run_v_laws(seed, trials, raw):
    p = _Params(raw)
    count, size, dim = p.int("sets", 2), p.int("size", 4), p.int("dim", 2)
    p.finish("v-laws")

    def make(rng):
        sets = [generators.point_set(rng, dim, size) for _ in range(count)]
        return lambda: verify_v_laws(sets)

    return _batch("v-laws", seed, trials, make)


def _run_d_laws(seed, trials, raw):
    p = _Params(raw)
    count, size, dim = p.int("sets", 2), p.int("size", 4), p.int("dim", 2)
    p.finish("d-laws")

    def make(rng):
        sets = [generators.point_set(rng, dim, size) for _ in range(count)]
        return lambda: verify_d_laws(sets)

    return _batch("d-laws", seed, trials, make)


def _run_gauge_sandwich(seed, trials, raw):
    p = _Params(raw)
    size, norm = p.int("size", 4), p.text("p", "inf")
    p.finish("gauge-sandwich")

    def make(rng):
        a = generators.point_set(rng, 2, size)
        return lambda: hausdorff_gauge_sandwich(a, norm)

    return _batch("gauge-sandwich", seed, trials, make)


def _run_radius(seed, trials, raw):
    p = _Params(raw)
    size = p.int("size", 4)
    p.finish("radius-relations")

    def make(rng):
        a = generators.point_set(rng, 2, size)
        return lambda: radius_relations(a)

    return _batch("radius-relations", seed, trials, make)


def _run_inclusion(seed, trials, raw):
    p = _Params(raw)
    size, extra = p.int("size", 4), p.int("extra", 2)
    p.finish("inclusion")

    def make(rng):
        a = generators.point_set(rng, 2, size)
        b = generators.within_hull(rng, a, extra)
        return lambda: inclusion_monotone(a, b)

    return _batch("inclusion", seed, trials, make)


def _run_line(seed, trials, raw):
    p = _Params(raw)
    size = p.int("size", 5)
    p.finish("line-identity")

    def make(rng):
        a = generators.point_set(rng, 1, size, span=4)
        return lambda: line_identity(a)

    return _batch("line-identity", seed, trials, make)


def _run_containment(seed, trials, raw):
    p = _Params(raw)
    kmax, size = p.int("kmax", 6), p.int("size", 4)
    kind = p.text("kind", "points")
    p.finish("containment")

    def make(rng):
        if kind == "boxes":
            u = generators.box_union(rng, 2, 2)
            return lambda: verify_containment_rate(u, kmax)
        if kind != "points":
            raise ValueError("kind must be 'points' or 'boxes'")
        a = generators.point_set(rng, 2, size)
        return lambda: verify_containment_rate(a, kmax)

    return _batch("containment", seed, trials, make)


# -- named instances -------------------------------------------------------------


def _run_simplex(seed, trials, raw):
    p = _Params(raw)
    n = p.int("n", 2)
    p.finish("simplex-ratio")
    return _single(simplex_halfsum_ratio(n), seed)


def _run_dyn_farkhi(seed, trials, raw):
    p = _Params(raw)
    f = p.fraction("f", 10)
    p.finish("dyn-farkhi")
    return _single(counterexample_dyn_farkhi(f), seed)


def _run_nonmonotone(seed, trials, raw):
    p = _Params(raw)
    k, d = p.int("k", 2), p.int("d", 6)
    p.finish("thm-nonmonotone")
    return _single(counterexample_thm_nonmonotone(k, d), seed)


REGISTRY: Dict[str, Runner] = {
    "superadditivity-1d": _run_superadditivity_1d,
    "superadditivity": _run_superadditivity,
    "average-growth": _run_average_growth,
    "supermodularity": _run_supermodularity,
    "supermodularity-counterexample": _run_supermod_counterexample,
    "supermodularity-hull": _run_supermod_hull,
    "det-supermodularity": _run_det,
    "fractional-superadditivity": _run_fractional,
    "projection": _run_projection,
    "c-laws": _run_c_laws,
    "c-two-point": _run_c_two_point,
    "v-laws": _run_v_laws,
    "d-laws": _run_d_laws,
    "gauge-sandwich": _run_gauge_sandwich,
    "radius-relations": _run_radius,
    "inclusion": _run_inclusion,
    "line-identity": _run_line,
    "containment": _run_containment,
    "simplex-ratio": _run_simplex,
    "dyn-farkhi": _run_dyn_farkhi,
    "thm-nonmonotone": _run_nonmonotone,
}

COUNTEREXAMPLES = ("thm-nonmonotone", "dyn-farkhi", "supermodularity-counterexample")


def run_verifier(name: str, seed: int = 0, trials: int = 20, params: Optional[Mapping[str, str]] = None) -> VerifierReport:
    """Look up ``name`` in the registry and run it."""
    if name not in REGISTRY:
        raise KeyError(f"unknown verifier {name!r}; choose from {', '.join(sorted(REGISTRY))}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    return REGISTRY[name](seed, trials, params or {})


def run_many(names: Sequence[str], seed: int = 0, trials: int = 20, workers: int = 4) -> List[VerifierReport]:
    """Several verifiers side by side; the reports come back in input order."""
    with ThreadPoolExecutor(max(1, workers)) as pool:
        return list(pool.map(lambda n: run_verifier(n, seed, trials), names))


__all__ = [
    "COUNTEREXAMPLES",
    "FractionalPartition",
    "REGISTRY",
    "block_cubes",
    "schneider_two_point_sequence",
    "counterexample_dyn_farkhi",
    "counterexample_thm_nonmonotone",
    "hausdorff_gauge_sandwich",
    "dyn_farkhi_sets",
    "generators",
    "inclusion_monotone",
    "line_identity",
    "radius_relations",
    "random_fractional_partition",
    "run_many",
    "run_verifier",
    "simplex_halfsum_ratio",
    "sqrt_sum_report",
    "staircase",
    "threshold_dimension",
    "verify_1d_superadditivity",
    "verify_1d_supermod_with_hull",
    "verify_average_growth",
    "verify_c_laws",
    "verify_containment_rate",
    "verify_d_laws",
    "verify_det_supermodularity",
    "verify_fractional_superadditivity",
    "verify_projection_monotone",
    "verify_refined_superadditivity",
    "verify_supermodularity_convex",
    "verify_supermodularity_counterexample",
    "verify_v_laws",
]
