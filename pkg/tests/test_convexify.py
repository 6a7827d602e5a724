"""Decompositions and sign balancing, checked against brute force."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from sumsets import NotInSumOfHulls, PointSet, balance_signs, lp_ball, sf_decompose
from sumsets.convexify import grinberg_bound_check, lp_guarantee_factor
from sumsets.gauges import EuclideanBall, gauge_norm


def _barycentre(rng, s):
    w = [Fraction(rng.randint(1, 6)) for _ in s.points]
    t = sum(w)
    return [sum(wi * p[j] for wi, p in zip(w, s.points)) / t for j in range(s.dim)]


@pytest.mark.parametrize("seed", range(20))
def test_decomposition_is_exact_and_sparse(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 4)
    k = rng.randint(1, 8)
    sets = [
        PointSet([tuple(Fraction(rng.randint(-4, 4), 2) for _ in range(dim)) for _ in range(rng.randint(1, 4))])
        for _ in range(k)
    ]
    target = [Fraction(0)] * dim
    for s in sets:
        target = [a + b for a, b in zip(target, _barycentre(rng, s))]
    dec = sf_decompose(sets, target)
    assert dec.reconstruct() == tuple(target)
    assert len(dec.fractional) <= dim
    for i, s in enumerate(sets):
        if i in dec.fractional:
            combo = dec.payload[i]
            assert all(p in s.points for p in combo.points)
            assert sum(combo.weights) == 1 and all(w > 0 for w in combo.weights)
        else:
            assert dec.payload[i] in s.points


def test_point_outside_the_sum_gets_a_separating_functional():
    sets = [PointSet([(0, 0), (1, 0)]), PointSet([(0, 0), (0, 1)])]
    with pytest.raises(NotInSumOfHulls) as err:
        sf_decompose(sets, (2, 2))
    exc = err.value
    assert exc.target_value > exc.sum_max
    recomputed = sum(max(sum(a * b for a, b in zip(exc.functional, p)) for p in s.points) for s in sets)
    assert recomputed == exc.sum_max


def test_dimension_mismatch_is_rejected():
    with pytest.raises(ValueError):
        sf_decompose([PointSet([(0, 0)])], (0, 0, 0))


def _brute_best(vectors, gauge):
    best = math.inf
    for signs in itertools.product((1, -1), repeat=len(vectors)):
        total = [sum(s * v[j] for s, v in zip(signs, vectors)) for j in range(len(vectors[0]))]
        best = min(best, gauge_norm(gauge, total))
    return best


@pytest.mark.parametrize("seed", range(12))
def test_balancing_respects_guarantee_and_brute_force(seed):
    rng = random.Random(50 + seed)
    n = rng.randint(1, 4)
    k = rng.randint(1, 9)
    p = rng.choice((1, 2, math.inf))
    gauge = EuclideanBall() if p == 2 else lp_ball(n, p)
    vectors = [[Fraction(rng.randint(-8, 8), 8) for _ in range(n)] for _ in range(k)]
    vectors = [[c / max(1, gauge_norm(gauge, v) * 2) for c in v] if gauge_norm(gauge, v) > 1 else v for v in vectors]
    res = balance_signs(vectors, gauge)
    signed = [sum(s * v[j] for s, v in zip(res.signs.signs, vectors)) for j in range(n)]
    assert gauge_norm(gauge, signed) == pytest.approx(res.achieved, abs=1e-12)
    assert res.achieved >= _brute_best(vectors, gauge) - 1e-12
    assert res.achieved <= lp_guarantee_factor(n, p) + 1e-12
    assert res.achieved <= res.guarantee + 1e-12


def test_basis_vectors_under_l1_are_sharp():
    basis = [[int(i == j) for j in range(6)] for i in range(6)]
    res = balance_signs(basis, lp_ball(6, 1))
    assert res.achieved_exact == 6 and _brute_best(basis, lp_ball(6, 1)) == 6


def test_guarantee_factors():
    assert lp_guarantee_factor(4, 2) == pytest.approx(2)
    assert lp_guarantee_factor(4, 1) == pytest.approx(4)
    assert lp_guarantee_factor(4, math.inf) == pytest.approx(4)


def test_empty_input_is_rejected():
    with pytest.raises(ValueError):
        balance_signs([])


def test_grinberg_bound_on_segments():
    sets = [PointSet([(0, 0), (1, 0)]), PointSet([(0, 0), (0, 1)]), PointSet([(0, 0), (1, 1)])]
    assert grinberg_bound_check(sets).holds
