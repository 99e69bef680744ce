"""Torus verdicts, chambers, limits, and the unstable stratification."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from oracles import certify_closest_point
from stabloci.actions import GradingData, ProjectivePoint, TorusWeights
from stabloci.errors import EnumerationBoundExceeded, UnknownIndex
from stabloci.hull import HullPosition
from stabloci.linalg import vec, zero_vec
from stabloci.torus import (
    Chamber,
    Status,
    StratumIndex,
    chamber_contains_zero_interior,
    stratification_indices,
    limit_point,
    lowest_bounded_chamber,
    stratum_of,
    stratum_quotient_data,
    torus_verdict,
)

LINE = TorusWeights(rank=1, weights=((-1,), (0,), (2,)))
ZERO1 = zero_vec(1)


def point(*coords):
    return ProjectivePoint(coords)


def test_verdict_examples():
    assert torus_verdict(LINE, ZERO1, point(1, 1, 1)).status == Status.STABLE
    assert torus_verdict(LINE, ZERO1, point(0, 1, 0)).status == Status.STRICTLY_SEMISTABLE
    right = TorusWeights(rank=1, weights=((1,), (2,)))
    assert torus_verdict(right, ZERO1, point(1, 1)).status == Status.UNSTABLE
    assert torus_verdict(right, ZERO1, point(1, 0)).status == Status.UNSTABLE


def test_verdict_matches_witness_position():
    v = torus_verdict(LINE, ZERO1, point(1, 1, 1))
    assert v.hull_position == HullPosition.INTERIOR
    v2 = torus_verdict(LINE, ZERO1, point(0, 1, 0))
    assert v2.hull_position == HullPosition.BOUNDARY


def test_lowest_bounded_chamber_examples():
    g = GradingData(gm_weights=(0, 0, 1, 2))
    assert lowest_bounded_chamber(g) == Chamber(Fraction(0), Fraction(1))
    g2 = GradingData(gm_weights=(5, 5, 5))
    assert lowest_bounded_chamber(g2) == Chamber(Fraction(5), Fraction(5))
    g3 = GradingData(gm_weights=(-2, 3))
    assert lowest_bounded_chamber(g3) == Chamber(Fraction(-2), Fraction(3))


def test_chamber_uses_the_twist():
    g = GradingData(gm_weights=(0, 0, 1, 2), character_twist=Fraction(1, 2))
    assert lowest_bounded_chamber(g) == Chamber(Fraction(-1, 2), Fraction(1, 2))


def test_chamber_interior_examples():
    assert chamber_contains_zero_interior(Chamber(Fraction(-1), Fraction(2)))
    assert not chamber_contains_zero_interior(Chamber(Fraction(0), Fraction(1)))
    assert chamber_contains_zero_interior(Chamber(Fraction(0), Fraction(0)))


def test_limit_point_examples():
    steps = TorusWeights(rank=1, weights=((0,), (1,), (2,)))
    assert limit_point(steps, [1], point(1, 1, 1)) == point(1, 0, 0)
    assert limit_point(steps, [0], point(1, 1, 1)) == point(1, 1, 1)
    ties = TorusWeights(rank=1, weights=((1,), (1,), (3,)))
    assert limit_point(ties, [1], point(2, 5, 7)) == point(2, 5, 0)


def test_limit_point_idempotent_and_support_fixed():
    rng = random.Random(3)
    for _ in range(50):
        rank = rng.randint(1, 2)
        count = rng.randint(2, 5)
        tw = TorusWeights(
            rank=rank,
            weights=tuple(tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(count)),
        )
        lam = [rng.randint(-2, 2) for _ in range(rank)]
        coords = [Fraction(rng.randint(0, 3)) for _ in range(count)]
        if all(c == 0 for c in coords):
            coords[0] = Fraction(1)
        x = ProjectivePoint(coords)
        y = limit_point(tw, lam, x)
        assert limit_point(tw, lam, y) == y


def test_stratification_indices_examples():
    sym = TorusWeights(rank=1, weights=((-1,), (0,), (1,)))
    strat = stratification_indices(sym, ZERO1)
    betas = {idx.beta for idx in strat.indices}
    assert betas == {(Fraction(0),), (Fraction(-1),), (Fraction(1),)}
    assert [idx.norm_sq for idx in strat.indices] == [Fraction(0), Fraction(1), Fraction(1)]

    right = TorusWeights(rank=1, weights=((1,), (2,)))
    strat2 = stratification_indices(right, ZERO1)
    assert {idx.beta for idx in strat2.indices} == {(Fraction(1),), (Fraction(2),)}

    single = TorusWeights(rank=1, weights=((0,),))
    strat3 = stratification_indices(single, ZERO1)
    assert [idx.beta for idx in strat3.indices] == [(Fraction(0),)]


def test_stratification_respects_subset_cap():
    big = TorusWeights(rank=1, weights=tuple((i,) for i in range(9)))
    with pytest.raises(EnumerationBoundExceeded):
        stratification_indices(big, ZERO1, subset_cap=8)


def test_stratum_of_examples():
    sym = TorusWeights(rank=1, weights=((-1,), (0,), (1,)))
    assert stratum_of(sym, ZERO1, point(1, 0, 0)).beta == (Fraction(-1),)
    assert stratum_of(sym, ZERO1, point(1, 0, 1)).beta == (Fraction(0),)
    right = TorusWeights(rank=1, weights=((1,), (2,)))
    assert stratum_of(right, ZERO1, point(1, 1)).beta == (Fraction(1),)


def test_stratum_zero_iff_not_unstable():
    rng = random.Random(11)
    for _ in range(80):
        rank = rng.randint(1, 2)
        count = rng.randint(1, 6)
        tw = TorusWeights(
            rank=rank,
            weights=tuple(tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(count)),
        )
        twist = tuple(Fraction(rng.randint(-1, 1)) for _ in range(rank))
        coords = [Fraction(rng.randint(-2, 2)) for _ in range(count)]
        if all(c == 0 for c in coords):
            coords[-1] = Fraction(1)
        x = ProjectivePoint(coords)
        unstable = torus_verdict(tw, twist, x).status == Status.UNSTABLE
        assert stratum_of(tw, twist, x).is_zero() == (not unstable)


def test_stratum_quotient_data_examples():
    sym = TorusWeights(rank=1, weights=((-1,), (0,), (1,)))
    idx = StratumIndex.from_beta(vec([1]))
    data = stratum_quotient_data(sym, ZERO1, idx)
    assert data.z_indices == (2,)
    assert data.admits_support((2,))
    assert not data.admits_support((0, 2))  # pairing -1 < |beta|^2 kills it

    right = TorusWeights(rank=1, weights=((1,), (2,)))
    idx1 = StratumIndex.from_beta(vec([1]))
    data1 = stratum_quotient_data(right, ZERO1, idx1)
    assert data1.z_indices == (0,)
    assert data1.admits_support((0,)) and data1.admits_support((0, 1))
    assert not data1.admits_support((1,))
    # adapted twist sits strictly inside the next pairing gap
    assert Fraction(1) < data1.adapted_twist[0] < Fraction(2)


def test_stratum_quotient_defining_condition():
    rng = random.Random(23)
    for _ in range(30):
        rank = rng.randint(1, 2)
        count = rng.randint(2, 6)
        tw = TorusWeights(
            rank=rank,
            weights=tuple(tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(count)),
        )
        twist = zero_vec(rank)
        strat = stratification_indices(tw, twist)
        for idx in strat.indices:
            if idx.is_zero():
                continue
            data = stratum_quotient_data(tw, twist, idx)
            for i in data.z_indices:
                pairing = sum(b * Fraction(w) for b, w in zip(idx.beta, tw.weights[i]))
                assert pairing == idx.norm_sq


def test_stratum_quotient_rejects_unknown_index():
    with pytest.raises(UnknownIndex):
        stratum_quotient_data(LINE, ZERO1, StratumIndex.from_beta(vec([7])))
    with pytest.raises(UnknownIndex):
        zero = StratumIndex.from_beta(vec([0]))
        stratum_quotient_data(LINE, ZERO1, zero)


def test_adapted_retwist_invariance_rank_one():
    # stable sets agree for any two characters inside the same window
    weights = TorusWeights(rank=1, weights=((-3,), (-1,), (1,), (3,)))
    panel = [
        point(1, 1, 1, 1),
        point(1, 0, 0, 0),
        point(0, 1, 1, 0),
        point(1, 0, 0, 1),
        point(0, 0, 1, 1),
    ]
    for lo, hi in [(Fraction(-3), Fraction(-1)), (Fraction(-1), Fraction(1))]:
        chi_a = lo + (hi - lo) / 3
        chi_b = lo + (hi - lo) * 2 / 3
        table_a = [torus_verdict(weights, (chi_a,), x).status == Status.STABLE for x in panel]
        table_b = [torus_verdict(weights, (chi_b,), x).status == Status.STABLE for x in panel]
        assert table_a == table_b


def test_stratification_matches_per_subset_oracle_and_closure():
    rng = random.Random(7)
    for _ in range(25):
        rank = rng.randint(1, 2)
        count = rng.randint(1, 8)
        weights = tuple(tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(count))
        tw = TorusWeights(rank=rank, weights=weights)
        strat = stratification_indices(tw, zero_vec(rank))
        support_norm = {}
        for idx, supports in strat.assignments:
            for support in supports:
                support_norm[support] = idx.norm_sq
                pts = [vec(weights[i]) for i in support]
                assert certify_closest_point(pts, idx.beta)
        # every sub-support of an admissible support lands on a stratum
        # at least as far from the origin
        for support, nsq in support_norm.items():
            for size in range(1, len(support)):
                for sub in combinations(support, size):
                    assert support_norm[sub] >= nsq
