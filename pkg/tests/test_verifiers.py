"""Verifier registry, named instances and report semantics."""

from fractions import Fraction

import pytest

from sumsets import BoxUnion, PointSet, VerifierReport
from sumsets.reports import HOLDS, INCONCLUSIVE, VIOLATED, bounds_report, combine, exact_report
from sumsets.verify import (
    COUNTEREXAMPLES,
    REGISTRY,
    FractionalPartition,
    block_cubes,
    counterexample_dyn_farkhi,
    counterexample_thm_nonmonotone,
    line_identity,
    run_many,
    run_verifier,
    staircase,
    threshold_dimension,
    verify_average_growth,
    verify_containment_rate,
    verify_fractional_superadditivity,
    verify_projection_monotone,
)
from sumsets.verify.laws import schneider_two_point_sequence


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_every_runner(name):
    rep = run_verifier(name, seed=3, trials=3)
    if name in COUNTEREXAMPLES:
        assert rep.verdict == VIOLATED and rep.exact
    else:
        assert rep.verdict == HOLDS, rep


def test_runners_are_seeded():
    a = run_verifier("supermodularity", seed=5, trials=4)
    b = run_verifier("supermodularity", seed=5, trials=4)
    assert [(t.lhs, t.rhs) for t in a.trials] == [(t.lhs, t.rhs) for t in b.trials]


def test_unknown_names_and_parameters():
    with pytest.raises(KeyError):
        run_verifier("no-such-check")
    with pytest.raises(ValueError):
        run_verifier("simplex-ratio", params={"m": "3"})
    with pytest.raises(ValueError):
        run_verifier("simplex-ratio", params={"n": "three"})


def test_run_many_keeps_order():
    names = ["det-supermodularity", "supermodularity-hull", "line-identity"]
    assert [r.name for r in run_many(names, seed=1, trials=2)] == [run_verifier(n, 1, 2).name for n in names]


def test_threshold_dimension_and_block_cubes():
    assert threshold_dimension(2) == 12
    u = block_cubes(2, 3)
    assert u.dim == 6 and len(u.boxes) == 2
    below = counterexample_thm_nonmonotone(2, 2)
    assert below.details["above_threshold"] is False


def test_dyn_farkhi_is_violated_for_every_f():
    # 4f^2/(f^2+2) > 2f^2/(1+f^2) for all f > 0, small f included
    for f in (Fraction(1, 10), Fraction(1), Fraction(10)):
        rep = counterexample_dyn_farkhi(f, check_q1=False)
        assert rep.violated
        assert rep.lhs == 4 * f * f / (f * f + 2) and rep.rhs == 2 * f * f / (1 + f * f)
    with pytest.raises(ValueError):
        counterexample_dyn_farkhi(0)


def test_dyn_farkhi_plain_distances_bracket():
    rep = counterexample_dyn_farkhi(10, check_q1=True)
    assert rep.details["q1"]["verdict"] in (HOLDS, INCONCLUSIVE)


def test_two_point_sequence_and_line_identity():
    assert schneider_two_point_sequence(16).holds
    assert line_identity(PointSet([(0,), (1,), (4,), (Fraction(9, 2),)])).holds


def test_average_growth_and_projection():
    u = BoxUnion([((0, 0), (1, 1)), ((2, 0), (3, 2))])
    for k in (2, 3, 4):
        assert verify_average_growth(u, k).holds
    import random

    assert verify_projection_monotone(staircase(random.Random(1), 3), axis=1, kmax=3).holds


def test_fractional_partitions():
    with pytest.raises(ValueError):
        FractionalPartition(3, [([0, 1], 1)])
    with pytest.raises(ValueError):
        FractionalPartition(2, [([0, 1], Fraction(1, 2))])
    fp = FractionalPartition.uniform(4, 2)
    boxes = [((0, 0), (1, 2)), ((0, 0), (3, 1)), ((1, 1), (2, 2)), ((0, 0), (1, 1))]
    assert verify_fractional_superadditivity(boxes, fp).holds
    assert verify_fractional_superadditivity(boxes, FractionalPartition.whole(4)).lhs == verify_fractional_superadditivity(
        boxes, FractionalPartition.whole(4)
    ).rhs


def test_containment_methods_agree():
    a = PointSet([(0, 0), (1, 0), (0, 1), (Fraction(1, 3), Fraction(1, 3))])
    for method in ("exact", "cover", "auto"):
        assert verify_containment_rate(a, 5, method=method).holds
    assert verify_containment_rate(a, 8, method="cover", cover_limit=10).holds
    with pytest.raises(ValueError):
        verify_containment_rate(PointSet([(0,), (1,)]), 3, method="cover")
    assert verify_containment_rate(BoxUnion([((0,), (1,)), ((2,), (3,))]), 4).holds


def test_reports_refuse_float_violations():
    with pytest.raises(ValueError):
        VerifierReport("x", VIOLATED, 2.0, 1.0)
    assert exact_report("x", Fraction(2), Fraction(1), "<=").violated
    assert bounds_report("x", (2.0, 3.0), (0.0, 1.0), "<=").verdict == INCONCLUSIVE
    assert bounds_report("x", (0.0, 1.0), (2.0, 3.0), "<=").holds
    both = combine("pair", [exact_report("a", Fraction(1), Fraction(2), "<="), exact_report("b", Fraction(3), Fraction(2), "<=")])
    assert both.violated
