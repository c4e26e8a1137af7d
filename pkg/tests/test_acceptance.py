"""Acceptance criteria, one test each, with wall-clock limits.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible with
``pytest -s``; also repeated in the terminal summary).  Running this file
as a script executes all eight and prints the same lines.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

import pytest

from multfree import data
from multfree.cech import global_kplus, transform_polytope, vanishing_check
from multfree.classify import SU2_WALL_NAMES, classify_su2, delzant_check
from multfree.errors import InvalidPair, SingularOrAffine
from multfree.glue import LocalSystemAssignment, check_coherence, glue_weyl, local_weyl_report
from multfree.linalg import dot
from multfree.polytope import RationalPolytope, cut_corner
from multfree.rank_one import (
    RankOneElement,
    mat2_det,
    mat2_mul,
    real_form_psi,
    symplectic_identity_check,
    trivialize,
)
from multfree.roots import (
    component_injectivity_check,
    fiber_structure,
    phi_max,
    recognize_finite_type,
    special_involution,
    special_roots,
)

from configs import CONFIGS
from oracles import fixes, group_closure, int_det, quotient_invariants, reflection, smith_torsion

F = Fraction
RESULTS = {}


@contextmanager
def criterion(n, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        note = "" if within else f", over the {limit} s limit"
        line = f"criterion {n}: {status} ({elapsed:.2f} s{note})"
        RESULTS[n] = line
        print(line)
    assert within, line


# 1 ----------------------------------------------------------------------------------

def test_criterion_1_su2_table():
    with criterion(1, 1.0):
        # coadjoint orbits: a point polytope with trivial lattice datum
        for x in (0, F(1, 2), 3):
            assert classify_su2((x,), 0).case == "point"
        # wall-touching intervals
        assert set(SU2_WALL_NAMES) == {1, 2, 4}
        for d, name in SU2_WALL_NAMES.items():
            c = classify_su2((0, F(7, 3)), d)
            assert c.case == "wall" and c.name == name
        for d in (3, 5, 6, 8, 12):
            with pytest.raises(InvalidPair, match=r"\{1, 2, 4\}"):
                classify_su2((0, 2), d)
        # interior intervals: Hirzebruch of every degree
        for d in range(1, 30):
            c = classify_su2((F(1, 3), 4), d)
            assert c.case == "interior" and f"degree {d}" in c.name


# 2 ----------------------------------------------------------------------------------

def _edges_det_ok(certs):
    return all(abs(int_det([list(e) for e in c.edges])) == 1 for c in certs)


def test_criterion_2_delzant():
    with criterion(2, 1.0):
        ok, certs = delzant_check(RationalPolytope.from_vertices([(0, 0), (1, 0), (0, 1)]))
        assert ok and _edges_det_ok(certs)
        for d in range(1, 6):
            ok, certs = delzant_check(RationalPolytope.from_vertices([(0, 0), (d + 1, 0), (1, 1), (0, 1)]))
            assert ok and len(certs) == 4 and _edges_det_ok(certs)
        ok, certs = delzant_check(RationalPolytope.from_vertices([(0, 0), (1, 0), (0, 2)]))
        assert not ok and [c.det for c in certs if not c.ok] == [-2]
        square = RationalPolytope.box([0, 0], [1, 1])
        assert delzant_check(square)[0]
        for eps in (F(1, 3), F(1, 2)):
            for v in square.vertices:
                cut = cut_corner(square, v, eps)
                assert len(cut.vertices) == 5 and delzant_check(cut)[0]


# 3 ----------------------------------------------------------------------------------

def _obtuse_subsets(Phi):
    pos = [(Phi.roots[i], Phi.coroots[i]) for i in Phi.positive]
    for k in range(1, len(pos) + 1):
        for sub in combinations(pos, k):
            if all(dot(a, bc) <= 0 for (a, _), (b, bc) in combinations(sub, 2)) and \
                    all(dot(b, ac) <= 0 for (a, ac), (b, _) in combinations(sub, 2)):
                yield sub


def test_criterion_3_finite_type_recognition():
    with criterion(3, 30.0):
        for letter, n in [("A", 3), ("B", 3), ("C", 3), ("G", 2)]:
            Phi = data.cartan_datum(letter, n)
            seen_full = False
            for sub in _obtuse_subsets(Phi):
                C = [[dot(a, c) for _, c in sub] for a, _ in sub]
                typ = recognize_finite_type(C)
                G = group_closure([reflection(a, c) for a, c in sub], Phi.rank)
                assert typ.weyl_order == len(G), (letter, n, sub)
                assert typ.rank == len(sub)
                seen_full |= set(a for a, _ in sub) == set(Phi.simple_roots)
            assert seen_full and Phi.weyl_group.order == len(group_closure(
                [reflection(a, c) for a, c in zip(Phi.simple_roots, Phi.simple_coroots)], n))
        for bad in ([[2, -2], [-2, 2]], [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
                    [[2, -4], [-1, 2]], [[2, -3], [-2, 2]], [[2, -1, 0], [-1, 2, -2], [0, -2, 2]]):
            with pytest.raises(SingularOrAffine):
                recognize_finite_type(bad)


# 4 ----------------------------------------------------------------------------------

def chamber_polytope(Phi):
    n = Phi.rank
    ineqs = [(list(c), 0) for c in Phi.simple_coroots]
    total = [sum(c[j] for c in Phi.simple_coroots) for j in range(n)]
    if any(total):
        ineqs.append(([-x for x in total], -1))
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        ineqs += [(e, -3), ([-x for x in e], -3)]
    return RationalPolytope(n, ineqs)


def test_criterion_4_gluing():
    with criterion(4, 10.0):
        for name, Phi in sorted(data.builtin_data().items()):
            n = Phi.rank
            P = chamber_polytope(Phi)
            L = LocalSystemAssignment.induced(Phi, P)
            assert check_coherence(L, P) == []
            G = glue_weyl(L, P)
            group = group_closure([reflection(a, c) for a, c in zip(G.simple_roots, G.simple_coroots)], n)
            for face in P.faces:
                a = face.sample
                stab = {g for g in group if fixes(g, a)}
                wall = [(r, c) for r, c in zip(G.simple_roots, G.simple_coroots) if dot(a, c) == 0]
                assert stab == group_closure([reflection(r, c) for r, c in wall], n), (name, face.tight)
                # the local roots come back from the glued simple roots
                assert sorted(r for r, _ in wall) == sorted(L.at(face).roots)
            assert all(eq for *_, eq in local_weyl_report(G, P))


# 5 ----------------------------------------------------------------------------------

def test_criterion_5_fibers():
    with criterion(5, 10.0):
        z = fiber_structure(data.sl2(), (0,))
        assert (z.semisimple.torus_rank, z.semisimple.torsion, z.unipotent_rank) == (0, (2,), 1)
        for s in (1, -1, F(1, 2), 5):
            g = fiber_structure(data.sl2(), (s,))
            assert (g.semisimple.torus_rank, g.semisimple.torsion, g.unipotent_rank) == (1, (), 0)
        for name, Phi in sorted(data.builtin_data().items()):
            n = Phi.rank
            pts = {tuple([0] * n), tuple(range(1, n + 1))}
            pts |= {tuple(int(i == j) for j in range(n)) for i in range(n)}
            pts |= {tuple(c) for c in Phi.coroots}
            for p in sorted(pts):
                fs = fiber_structure(Phi, p)
                local = [Phi.roots[i] for i in Phi.local_indices(p)]
                free, tors = quotient_invariants(local, n)
                assert (fs.semisimple.torus_rank, list(fs.semisimple.torsion)) == (free, tors)
                if local:
                    assert list(fs.semisimple.torsion) == smith_torsion(local, n)
            M = phi_max(Phi.weyl_group)
            for k in range(len(M.simple_roots) + 1):
                for sub in combinations(M.simple_roots, k):
                    assert component_injectivity_check(M, list(sub))


# 6 ----------------------------------------------------------------------------------

def test_criterion_6_cech_vanishing():
    with criterion(6, 30.0):
        assert len(CONFIGS) >= 3
        for name, make in sorted(CONFIGS.items()):
            Phi, P, pieces = make()
            red, res = vanishing_check(Phi, P, pieces)
            for d in res.degrees:
                if d.degree >= 1:
                    assert d.free_rank == 0 and d.torsion == () and d.rational_betti == 0, name
            P0 = transform_polytope(P, red.basis)
            assert res.h0_lattice == global_kplus(red.datum, P0).lattice
            assert res.walls_meeting and all(x == 1 for x in res.surjectivity_divisors), name
        # the three configurations meet one, two and two walls
        walls = [len(vanishing_check(*CONFIGS[k]())[1].walls_meeting)
                 for k in ("rank-one interval", "A1xA1 square", "B2 chamber triangle")]
        assert walls == [1, 2, 2]


# 7 ----------------------------------------------------------------------------------

def _point(s, t):
    d = 1 - s * t * t
    return RankOneElement((1 + s * t * t) / d, 2 * t / d, s)


def _rat(rng, bound=5, den=9):
    return F(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def test_criterion_7_rank_one():
    with criterion(7, 5.0):
        rng = random.Random(20261017)
        done = 0
        while done < 1000:
            s, t1, t2 = _rat(rng), _rat(rng), _rat(rng)
            if s * t1 * t1 == 1 or s * t2 * t2 == 1:
                continue
            u, v = _point(s, t1), _point(s, t2)
            w = u * v
            assert w.a * w.a - s * w.b * w.b == 1
            assert w == v * u
            assert u * u.inverse() == RankOneElement.identity(s)
            done += 1
        for _ in range(200):
            r = _rat(rng) or F(1)
            s = r * r
            t1, t2 = _rat(rng), _rat(rng)
            if s * t1 * t1 == 1 or s * t2 * t2 == 1:
                continue
            u, v = _point(s, t1), _point(s, t2)
            assert trivialize(u * v, r) == trivialize(u, r) * trivialize(v, r)
        for _ in range(200):
            s = -abs(_rat(rng)) or F(-1)
            u, v = _point(s, _rat(rng)), _point(s, _rat(rng))
            Pu = real_form_psi(u)
            assert mat2_det(Pu) == 1
            # rows orthonormal
            assert Pu[0][0] * Pu[0][0] + Pu[0][1] * Pu[0][1] == 1 and Pu[1][0] * Pu[1][0] + Pu[1][1] * Pu[1][1] == 1
            assert Pu[0][0] * Pu[1][0] + Pu[0][1] * Pu[1][1] == 0
            assert mat2_mul(Pu, real_form_psi(v)) == real_form_psi(u * v)
        assert symplectic_identity_check().ok
        assert not symplectic_identity_check(coefficient=1).ok


# 8 ----------------------------------------------------------------------------------

def test_criterion_8_special_roots():
    with criterion(8, 1.0):
        (s,) = special_roots(data.pgl2())
        assert s.root == (1,) and s.summand_type == "A1" and s.direct_summand and s.pairing_is_identity
        eps = special_involution(data.pgl2(), (1,))
        assert eps.is_invariant(data.pgl2().weyl_group)
        assert [eps((k,)) for k in range(-2, 3)] == [1, -1, 1, -1, 1]
        Phi = data.get("B2_root")
        sp = special_roots(Phi)
        assert {x.root for x in sp} == {(0, 1), (1, 1)}
        assert all(x.summand_type == "B2" and x.direct_summand and x.pairing_is_identity for x in sp)
        short = {a for x in sp for a in x.short_roots}
        short |= {tuple(-c for c in a) for a in short}
        n = Phi.rank
        for x in sp:
            eps = special_involution(Phi, x.root)
            assert eps.is_invariant(Phi.weyl_group)
            for g in Phi.weyl_group.matrices():
                for chi in Phi.roots:
                    assert eps(tuple(sum(g[i][j] * chi[j] for j in range(n)) for i in range(n))) == eps(chi)
            for a in Phi.roots:
                assert eps(a) == (-1 if a in short else 1)


if __name__ == "__main__":
    import sys

    fails = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except Exception as exc:  # report and keep going
            fails += 1
            print(f"  {type(exc).__name__}: {exc}")
    sys.exit(1 if fails else 0)
