"""Polytopes and covers shared by the cohomology tests."""

from fractions import Fraction

from multfree import data
from multfree.polytope import RationalPolytope

F = Fraction


def _box(lo, hi):
    return RationalPolytope.box(lo, hi)


def rank_one_interval():
    P = _box([0], [1])
    pieces = [_box([0], [F(2, 3)]), _box([F(1, 3)], [1])]
    return data.sl2(), P, pieces


def sl2_squared_square():
    P = _box([0, 0], [1, 1])
    a, b = F(2, 3), F(1, 3)
    pieces = [_box([0, 0], [a, a]), _box([b, 0], [1, a]), _box([0, b], [a, 1]), _box([b, b], [1, 1])]
    return data.sl2_squared(), P, pieces


def so5_triangle():
    # barycentric coordinates: x - 1, y and 2 - x - y; piece i keeps lambda_i >= 1/4
    P = RationalPolytope.from_vertices([(1, 0), (2, 0), (1, 1)])
    q = F(1, 4)
    halves = [([1, 0], 1 + q), ([0, 1], q), ([-1, -1], -2 + q)]
    pieces = [RationalPolytope(2, list(P.inequalities) + [h]) for h in halves]
    return data.so5(), P, pieces


CONFIGS = {
    "rank-one interval": rank_one_interval,
    "A1xA1 square": sl2_squared_square,
    "B2 chamber triangle": so5_triangle,
}


def boundary_strips(width=F(1, 10)):
    """Four thin strips along the edges of the unit square: the nerve is a
    4-cycle and the centre is not covered."""
    w = width
    return [_box([0, 0], [1, w]), _box([1 - w, 0], [1, 1]), _box([0, 1 - w], [1, 1]), _box([0, 0], [w, 1])]
