from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multfree import data
from multfree.classify import (
    SU2_WALL_NAMES,
    LocalOracleTable,
    MomentumData,
    OracleRow,
    Verdict,
    classify_su2,
    delzant_check,
    mf_check,
    su2_momentum_data,
    trivial_type_criterion,
    weight_monoid_data,
)
from multfree.errors import InputError, InvalidPair
from multfree.linalg import Sublattice
from multfree.polytope import RationalPolytope, cut_corner, tangent_cone
from multfree.roots import RootDatum

from oracles import int_det

F = Fraction


def hirzebruch(d):
    return RationalPolytope.from_vertices([(0, 0), (d + 1, 0), (1, 1), (0, 1)])


# weight monoids --------------------------------------------------------------------

# [TRIVIAL]
def test_numerical_semigroups():
    w = weight_monoid_data([(2,), (3,)])
    assert not w.saturated and w.gap == (1,)
    assert weight_monoid_data([(2,)]).saturated
    assert weight_monoid_data([(1, 0), (1, 2)]).saturated
    w = weight_monoid_data([(1, 0), (1, 1), (1, 3)])
    assert not w.saturated and w.gap == (1, 2)
    assert weight_monoid_data([(1, 0), (0, 1), (1, 1)]).saturated


def test_non_pointed_cone_refused():
    with pytest.raises(ValueError):
        weight_monoid_data([(1,), (-1,)])


def _in_cone_2d(x, gens):
    # x is in the cone iff it is a non-negative combination of at most two generators
    if not any(x):
        return True
    for i, a in enumerate(gens):
        if a[0] * x[1] - a[1] * x[0] == 0 and a[0] * x[0] + a[1] * x[1] > 0:
            return True
        for b in gens[i + 1:]:
            D = int_det([[a[0], b[0]], [a[1], b[1]]])
            if D == 0:
                continue
            s = F(x[0] * b[1] - x[1] * b[0], D)
            t = F(a[0] * x[1] - a[1] * x[0], D)
            if s >= 0 and t >= 0:
                return True
    return False


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 3)), min_size=1, max_size=3, unique=True))
def test_saturation_matches_brute_force(gens):
    # [DERIVED: enumerate monoid sums of bounded height]
    B = 8
    monoid = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = (p[0] + g[0], p[1] + g[1])
                if q[1] <= B and q not in monoid:
                    monoid.add(q)
                    nxt.append(q)
        frontier = nxt
    L = Sublattice(gens, 2)
    lattice_cone = {(x, y) for y in range(B + 1) for x in range(-3 * B, 3 * B + 1)
                    if (x, y) in L and _in_cone_2d((x, y), gens)}
    w = weight_monoid_data(gens)
    assert w.saturated == (lattice_cone <= monoid)
    if not w.saturated:
        assert w.gap in lattice_cone and w.gap not in monoid


# Delzant ----------------------------------------------------------------------------

# [PAPER] simplex and Hirzebruch trapezoids are smooth
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_hirzebruch_is_delzant(d):
    ok, certs = delzant_check(hirzebruch(d))
    assert ok and len(certs) == 4
    for c in certs:
        assert abs(int_det([list(e) for e in c.edges])) == 1


def test_simplex_is_delzant():
    assert delzant_check(RationalPolytope.from_vertices([(0, 0), (1, 0), (0, 1)]))[0]


def test_bad_triangle():
    ok, certs = delzant_check(RationalPolytope.from_vertices([(0, 0), (1, 0), (0, 2)]))
    assert not ok
    bad = [c for c in certs if not c.ok]
    assert len(bad) == 1 and bad[0].vertex == (1, 0) and bad[0].det == -2


def test_delzant_non_simple_vertex():
    octa = RationalPolytope.from_vertices([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    ok, certs = delzant_check(octa)
    assert not ok and not any(c.simple for c in certs)


def test_delzant_other_lattice():
    # the triangle with vertex (0, 2) is smooth for the lattice Z + 2Z
    Q = RationalPolytope.from_vertices([(0, 0), (1, 0), (0, 2)])
    assert delzant_check(Q, Sublattice([(1, 0), (0, 2)], 2))[0]


@pytest.mark.parametrize("eps", [F(1, 3), F(1, 2)])
def test_corner_cut_preserves_delzant(eps):
    P = RationalPolytope.box([0, 0], [1, 1])
    for v in P.vertices:
        assert delzant_check(cut_corner(P, v, eps))[0]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.sampled_from([F(1, 3), F(1, 4), F(1, 5)]))
def test_corner_cut_hirzebruch(d, eps):
    P = hirzebruch(d)
    assert delzant_check(cut_corner(P, (0, 0), eps))[0]


# SU(2) ------------------------------------------------------------------------------

# [PAPER] the corollary table
@pytest.mark.parametrize("d,name", sorted(SU2_WALL_NAMES.items()))
def test_su2_wall(d, name):
    c = classify_su2((0, 5), d)
    assert c.case == "wall" and c.name == name


@pytest.mark.parametrize("d", [3, 5, 6, 7, 8])
def test_su2_wall_rejects(d):
    with pytest.raises(InvalidPair, match=r"\{1, 2, 4\}"):
        classify_su2((0, 5), d)


@pytest.mark.parametrize("d", [1, 2, 3, 7, 11])
def test_su2_interior_hirzebruch(d):
    c = classify_su2((F(1, 2), 3), d)
    assert c.case == "interior" and f"degree {d}" in c.name


def test_su2_points():
    assert classify_su2((0,), 0).name == "point"
    assert classify_su2((F(3, 2),), 0).case == "point"
    with pytest.raises(InvalidPair):
        classify_su2((1,), 2)
    with pytest.raises(InvalidPair):
        classify_su2((0, 1), 0)
    with pytest.raises(InputError):
        classify_su2((2, 1), 1)


@pytest.mark.parametrize("P,d,expected", [((0, 5), 1, Verdict.YES), ((0, 5), 2, Verdict.YES),
                                          ((0, 5), 4, Verdict.YES), ((0, 5), 3, Verdict.NO),
                                          ((1, 5), 3, Verdict.YES), ((0,), 0, Verdict.YES)])
def test_mf_check_agrees_with_su2_table(P, d, expected):
    overall, _ = mf_check(su2_momentum_data(P, d), data.sl2())
    assert overall == expected


# local models ------------------------------------------------------------------------

def test_trivial_type_criterion():
    Q = RationalPolytope.box([0, 0], [1, 1])
    L = Sublattice.full(2)
    assert trivial_type_criterion(tangent_cone(Q, (0, 0)), L)[0]
    assert trivial_type_criterion(tangent_cone(Q, (F(1, 2), 0)), L)[0]
    T = tangent_cone(RationalPolytope.from_vertices([(0, 0), (1, 0), (0, 2)]), (1, 0))
    assert not trivial_type_criterion(T, L)[0]
    # lattice too small to span the cone
    assert not trivial_type_criterion(tangent_cone(Q, (0, 0)), Sublattice([(1, 0)], 2))[0]


def test_torus_square_is_multiplicity_free():
    Q = RationalPolytope.box([0, 0], [1, 1])
    overall, reps = mf_check(MomentumData(Q, Sublattice.full(2)), RootDatum(2, (), (), ()), faces="all")
    assert overall == Verdict.YES and len(reps) == 9


def test_undecided_and_oracle_rows():
    Q = RationalPolytope.from_vertices([(1, 0), (2, 0), (1, 1)])
    md = MomentumData(Q, Sublattice.full(2))
    overall, reps = mf_check(md, data.so5())
    assert overall == Verdict.UNDECIDED
    Phi = data.so5()
    rows = []
    for r in reps:
        local = {Phi.roots[i] for i in Phi.local_indices(r.point)}
        simple = tuple(a for a in Phi.simple_roots if a in local)
        rows.append(OracleRow(r.local_type, simple, ((1, 0), (0, 1)), (r.cone.rays,)))
    overall, reps = mf_check(md, Phi, LocalOracleTable(rows))
    assert overall == Verdict.YES and all(r.rule == "oracle" for r in reps)
    # dropping one row turns its vertex into a negative answer
    overall, _ = mf_check(md, Phi, LocalOracleTable(rows[1:]))
    assert overall == Verdict.NO


def test_mf_check_input_errors():
    with pytest.raises(InputError):
        mf_check(MomentumData(RationalPolytope.box([-1], [1]), Sublattice.full(1)), data.sl2())
    unbounded = RationalPolytope(1, [([1], 0)])
    with pytest.raises(InputError):
        mf_check(MomentumData(unbounded, Sublattice.full(1)), data.sl2())
    overall, _ = mf_check(MomentumData(unbounded, Sublattice([(2,)], 1)), data.sl2(), points=[(0,)])
    assert overall == Verdict.YES
