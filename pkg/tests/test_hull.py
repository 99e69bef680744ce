import random
from fractions import Fraction

import pytest

from oracles import certify_closest_point, oracle_hull_position
from stabloci.hull import HullPosition, closest_point_to_origin, hull_origin_position
from stabloci.linalg import dot, norm_sq, vec, vec_sub


def pts(*rows):
    return [vec(r) for r in rows]


def test_position_examples():
    assert hull_origin_position(pts([-1], [2])) == HullPosition.INTERIOR
    assert hull_origin_position(pts([1], [2])) == HullPosition.OUTSIDE
    assert hull_origin_position(pts([0, 1], [0, -1])) == HullPosition.BOUNDARY


def test_position_more_shapes():
    # full triangle around the origin
    assert hull_origin_position(pts([2, 0], [-1, 1], [-1, -1])) == HullPosition.INTERIOR
    # origin is a vertex
    assert hull_origin_position(pts([0, 0], [1, 0], [0, 1])) == HullPosition.BOUNDARY
    # origin on an edge of a full-dimensional hull
    assert hull_origin_position(pts([-1, 0], [1, 0], [0, 1])) == HullPosition.BOUNDARY
    # 3d simplex containing the origin strictly
    assert (
        hull_origin_position(pts([3, 0, 0], [0, 3, 0], [0, 0, 3], [-1, -1, -1]))
        == HullPosition.INTERIOR
    )


def test_closest_point_examples():
    assert closest_point_to_origin(pts([1], [3])) == (Fraction(1),)
    assert closest_point_to_origin(pts([-1], [1])) == (Fraction(0),)


def test_closest_point_segment_by_grid_refinement_oracle():
    points = pts([2, 0], [0, 2])
    computed = closest_point_to_origin(points)
    # brute-force refinement along the segment (1-t)*a + t*b
    best = None
    for k in range(0, 257):
        t = Fraction(k, 256)
        cand = tuple((1 - t) * a + t * b for a, b in zip(points[0], points[1]))
        if best is None or norm_sq(cand) < norm_sq(best):
            best = cand
    assert computed == best == (Fraction(1), Fraction(1))


def test_closest_point_variational_inequality_randomised():
    rng = random.Random(99)
    for _ in range(120):
        rank = rng.randint(1, 3)
        count = rng.randint(1, 6)
        points = [
            vec([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rank)])
            for _ in range(count)
        ]
        p = closest_point_to_origin(points)
        for q in points:
            assert dot(p, vec_sub(q, p)) >= 0
        assert certify_closest_point(points, p)


def test_position_agrees_with_oracle_randomised():
    rng = random.Random(5)
    for _ in range(200):
        rank = rng.randint(1, 3)
        count = rng.randint(1, 6)
        points = [
            vec([Fraction(rng.randint(-3, 3)) for _ in range(rank)]) for _ in range(count)
        ]
        assert hull_origin_position(points) == oracle_hull_position(points)


def test_membership_consistent_with_closest_point():
    rng = random.Random(17)
    for _ in range(100):
        rank = rng.randint(1, 2)
        count = rng.randint(1, 5)
        points = [
            vec([Fraction(rng.randint(-3, 3)) for _ in range(rank)]) for _ in range(count)
        ]
        inside = hull_origin_position(points) != HullPosition.OUTSIDE
        assert inside == (norm_sq(closest_point_to_origin(points)) == 0)


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        hull_origin_position([])
