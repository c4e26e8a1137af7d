import warnings
from fractions import Fraction

import pytest

from multfree import data
from multfree.errors import InconsistentHalving, InputError, NonNegativePairing, RecoveryFailure
from multfree.glue import (
    LocalSystem,
    LocalSystemAssignment,
    WallMissesPolytope,
    check_coherence,
    construct_phi_M,
    glue_weyl,
    local_weyl_report,
)
from multfree.linalg import Sublattice, dot
from multfree.polytope import RationalPolytope

from oracles import fixes, group_closure, reflection

F = Fraction
BUILTINS = data.builtin_data()


def chamber_polytope(Phi):
    """Walls of the dominant chamber, a cap, and a box for central directions."""
    n = Phi.rank
    ineqs = [(list(c), 0) for c in Phi.simple_coroots]
    total = [sum(c[j] for c in Phi.simple_coroots) for j in range(n)]
    if any(total):
        ineqs.append(([-x for x in total], -1))
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        ineqs += [(e, -3), ([-x for x in e], -3)]
    return RationalPolytope(n, ineqs)


def so5_triangle():
    return RationalPolytope.from_vertices([(1, 0), (2, 0), (1, 1)])


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_induced_assignment_glues_back(name):
    # [DERIVED: brute-force stabilizers in a naively closed group]
    Phi = BUILTINS[name]
    P = chamber_polytope(Phi)
    L = LocalSystemAssignment.induced(Phi, P)
    assert check_coherence(L, P) == []
    G = glue_weyl(L, P)
    assert G.dynkin_type == Phi.dynkin_type()
    assert G.weyl.order == Phi.weyl_group.order
    n = Phi.rank
    group = group_closure([reflection(a, c) for a, c in zip(G.simple_roots, G.simple_coroots)], n)
    for F_ in P.faces:
        stab = {g for g in group if fixes(g, F_.sample)}
        local = [reflection(a, c) for a, c in zip(G.simple_roots, G.simple_coroots) if dot(F_.sample, c) == 0]
        assert stab == group_closure(local, n)
    assert all(eq for *_, eq in local_weyl_report(G, P))


def test_so5_triangle():
    P = so5_triangle()
    L = LocalSystemAssignment.induced(data.so5(), P)
    G = glue_weyl(L, P)
    assert str(G.dynkin_type) == "B2" and G.weyl.order == 8
    assert set(G.simple_roots) == {(0, 1), (1, -1)}


def test_assignment_validation():
    P = so5_triangle()
    faces = {f.tight: f for f in P.faces}
    edge = next(t for t, f in faces.items() if f.dim == 1 and f.sample[1] == 0)
    with pytest.raises(InputError):
        LocalSystemAssignment(P, {(99,): LocalSystem()})
    with pytest.raises(InputError):
        LocalSystemAssignment(P, {edge: LocalSystem(((1, -1),), ((1, -1),))})  # wall misses the face
    with pytest.raises(InputError):
        LocalSystemAssignment(P, {edge: LocalSystem(((0, 1),), ((0, 1),))})  # pairing 1


def test_non_negative_pairing_detected():
    P = RationalPolytope.from_vertices([(0, 0), (1, 0), (0, 1)])
    faces = {f.sample: f.tight for f in P.faces if f.dim == 1}
    bottom = faces[(F(1, 2), 0)]
    left = faces[(0, F(1, 2))]
    L = LocalSystemAssignment(P, {bottom: LocalSystem(((0, 2),), ((0, 1),)),
                                  left: LocalSystem(((2, 1),), ((1, 0),))})
    with pytest.raises(NonNegativePairing):
        glue_weyl(L, P)


def test_recovery_failure_detected():
    P = so5_triangle()
    L = LocalSystemAssignment.induced(data.so5(), P)
    corner = next(f.tight for f in P.faces if f.sample == (1, 0))
    broken = {k: v for k, v in L.systems.items() if k != corner}
    B = LocalSystemAssignment(P, broken)
    assert check_coherence(B, P)
    with pytest.raises(RecoveryFailure):
        glue_weyl(B, P)


# Phi_M ------------------------------------------------------------------------

def test_phi_m_so5_halving():
    P = so5_triangle()
    L = LocalSystemAssignment.induced(data.so5(), P)
    G = glue_weyl(L, P)
    res = construct_phi_M(Sublattice.full(2), G.weyl, L, P)
    halving = dict(res.halving)
    assert halving[(0, 2)] == F(1, 2) and halving[(1, -1)] == 1
    assert set(res.datum.roots) == set(data.so5().roots)
    assert res.warnings == ()


@pytest.mark.parametrize("root,coroot,expected", [((2,), (1,), {(2,), (-2,)}), ((1,), (2,), {(1,), (-1,)})])
def test_phi_m_rank_one(root, coroot, expected):
    P = RationalPolytope.box([0], [1])
    wall = next(f.tight for f in P.faces if f.sample == (0,))
    L = LocalSystemAssignment(P, {wall: LocalSystem((root,), (coroot,))})
    G = glue_weyl(L, P)
    res = construct_phi_M(Sublattice.full(1), G.weyl, L, P)
    assert set(res.datum.roots) == expected


def test_phi_m_other_lattice():
    # Lambda_M = 2Z: in its coordinates the root 2 becomes 1 and is not critical
    P = RationalPolytope.box([0], [1])
    wall = next(f.tight for f in P.faces if f.sample == (0,))
    L = LocalSystemAssignment(P, {wall: LocalSystem(((2,),), ((1,),))})
    G = glue_weyl(L, P)
    res = construct_phi_M(Sublattice([(2,)], 1), G.weyl, L, P)
    assert res.basis == ((2,),)
    assert set(res.datum.roots) == {(1,), (-1,)}


def test_phi_m_wall_misses_polytope():
    # the glued group acts, but no face of P lies on the critical wall
    P = RationalPolytope.box([1], [2])
    G = glue_weyl(LocalSystemAssignment.induced(data.sl2(), RationalPolytope.box([0], [1])))
    L = LocalSystemAssignment(P, {})
    with pytest.warns(WallMissesPolytope):
        res = construct_phi_M(Sublattice.full(1), G.weyl, L, P)
    assert res.halving == (((2,), 1),) and res.warnings


def test_phi_m_inconsistent_halving():
    # a face on the critical wall whose local system has neither alpha nor alpha/2
    P = RationalPolytope.box([0, 0], [1, 1])
    G = glue_weyl(LocalSystemAssignment.induced(data.sl2_squared(), P))
    wall_face = next(f.tight for f in P.faces if f.sample == (0, F(1, 2)))
    L = LocalSystemAssignment(P, {wall_face: LocalSystem()})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(InconsistentHalving):
            construct_phi_M(Sublattice.full(2), G.weyl, L, P)
