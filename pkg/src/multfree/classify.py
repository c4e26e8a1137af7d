"""Classification front end: weight monoids, the Delzant test, the SU(2)
table and the face-by-face multiplicity-free check."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import lp
from .errors import InputError, InvalidPair
from .glue import ambient_local_roots
from .linalg import (
    Sublattice,
    det,
    dot,
    integer_kernel,
    inverse,
    matvec,
    primitive,
    rank,
    smith_normal_form,
    solve,
    transpose,
)
from .polytope import RationalPolytope, TangentCone, chamber_containment, tangent_cone
from .roots import RootDatum


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


# ---------------------------------------------------------------------------
# weight monoids

@dataclass(frozen=True)
class WeightMonoidData:
    cone: RationalPolytope
    lattice: Sublattice
    saturated: bool
    gap: tuple | None  # a point of cone & lattice outside the monoid


def _lattice_coords(L: Sublattice, v):
    y = solve(transpose([list(b) for b in L.basis]), list(v))
    if y is None:
        raise InputError(f"{tuple(v)} is not in the span of the lattice")
    return y


def _box_points(M):
    """Integer points of the half-open parallelepiped spanned by the
    columns of the square integer matrix ``M``."""
    n = len(M)
    snf = smith_normal_form(M)
    U_inv = inverse(snf.U)
    M_inv = inverse(M)
    diag = snf.diagonal
    reps = [[]]
    for d in diag:
        reps = [r + [k] for r in reps for k in range(abs(d))]
    out = []
    for k in reps:
        p = matvec(U_inv, k)
        lam = matvec(M_inv, p)
        shift = [x.numerator // x.denominator for x in lam]
        q = [p[i] - sum(M[i][j] * shift[j] for j in range(n)) for i in range(n)]
        out.append(tuple(int(x) for x in q))
    return out


def _positive_functional(gens, r):
    res = lp.minimize([0] * r, [(g, 1) for g in gens], dim=r)
    if res.status != "optimal":
        return None
    return res.x


def weight_monoid_data(xi: Sequence[Sequence[int]], box_limit: int = 100000) -> WeightMonoidData:
    """Cone and group generated by ``xi`` and whether the monoid generated by
    ``xi`` is saturated, i.e. equals cone & group.  Pointed cones only."""
    if not xi:
        raise InputError("need at least one generator")
    n = len(xi[0])
    gens = [tuple(int(x) for x in g) for g in xi if any(g)]
    cone = RationalPolytope.cone(xi, n)
    L = Sublattice(gens, n)
    if not gens:
        return WeightMonoidData(cone, L, True, None)
    r = L.rank
    coords = sorted({tuple(int(x) for x in _lattice_coords(L, g)) for g in gens})
    phi = _positive_functional(coords, r)
    if phi is None:
        raise ValueError("saturation check needs a pointed cone")
    memo = {}

    def member(q):
        if not any(q):
            return True
        if q in memo:
            return memo[q]
        ok = False
        for c in coords:
            rest = tuple(a - b for a, b in zip(q, c))
            if dot(phi, rest) >= 0 and member(rest):
                ok = True
                break
        memo[q] = ok
        return ok

    for S in combinations(coords, r):
        M = [[S[j][i] for j in range(r)] for i in range(r)]
        if det(M) == 0:
            continue
        if abs(det(M)) > box_limit:
            raise ValueError(f"parallelepiped with {abs(det(M))} points is too large")
        for q in _box_points(M):
            if not member(q):
                gap = tuple(sum(c * b[j] for c, b in zip(q, L.basis)) for j in range(n))
                return WeightMonoidData(cone, L, False, gap)
    return WeightMonoidData(cone, L, True, None)


# ---------------------------------------------------------------------------
# Delzant

@dataclass(frozen=True)
class VertexCertificate:
    vertex: tuple
    edges: tuple  # primitive lattice vectors along the edges
    simple: bool
    det: int | None
    ok: bool


def _primitive_in(L: Sublattice, r):
    y = _lattice_coords(L, r)
    return primitive(y)


def delzant_check(Q: RationalPolytope, lattice: Sublattice | None = None):
    """Is every vertex cone spanned by a lattice basis?  Returns
    ``(verdict, certificates)``."""
    if not Q.is_bounded:
        raise InputError("Delzant check needs a bounded polytope")
    n = Q.dim
    L = lattice or Sublattice.full(n)
    if L.rank != n:
        raise InputError("lattice must have full rank")
    certs = []
    for v in Q.vertices:
        cone = tangent_cone(Q, v)
        edges_c = [_primitive_in(L, r) for r in cone.rays]
        edges = tuple(tuple(sum(c * b[j] for c, b in zip(e, L.basis)) for j in range(n)) for e in edges_c)
        simple = len(edges) == n
        d = det([list(e) for e in edges_c]) if simple else None
        certs.append(VertexCertificate(v, edges, simple, d, simple and abs(d) == 1))
    return all(c.ok for c in certs), certs


# ---------------------------------------------------------------------------
# SU(2)

SU2_WALL_NAMES = {1: "P^2 = P(C^2 + C)", 2: "P^1 x P^1", 4: "P(sl2) = P^2"}


@dataclass(frozen=True)
class Su2Classification:
    case: str  # "point", "wall" or "interior"
    x: Fraction
    y: Fraction
    d: int
    name: str


def classify_su2(P: Sequence, d: int) -> Su2Classification:
    """``P`` is ``(x,)`` or ``(x, y)``; the lattice is ``d Z``."""
    pts = [Fraction(p) for p in P]
    if len(pts) == 2 and pts[0] == pts[1]:
        pts = pts[:1]
    if not pts or len(pts) > 2 or pts[0] < 0 or (len(pts) == 2 and pts[1] < pts[0]):
        raise InputError("need a point x >= 0 or an interval 0 <= x <= y")
    d = int(d)
    if d < 0:
        raise InputError("d must be non-negative")
    if len(pts) == 1:
        if d != 0:
            raise InvalidPair("a point needs the zero lattice (d = 0)")
        x = pts[0]
        return Su2Classification("point", x, x, 0, "point" if x == 0 else "P^1 (coadjoint orbit)")
    x, y = pts
    if d == 0:
        raise InvalidPair("an interval needs d >= 1")
    if x == 0:
        if d not in SU2_WALL_NAMES:
            raise InvalidPair(f"d = {d} at the wall is not admissible; d must lie in {{1, 2, 4}}")
        return Su2Classification("wall", x, y, d, SU2_WALL_NAMES[d])
    return Su2Classification("interior", x, y, d, f"Hirzebruch surface of degree {d}")


def su2_momentum_data(P: Sequence, d: int) -> "MomentumData":
    pts = [Fraction(p) for p in P]
    if len(pts) == 1 or pts[0] == pts[-1]:
        Q = RationalPolytope.from_vertices([(pts[0],)])
    else:
        Q = RationalPolytope.from_vertices([(pts[0],), (pts[1],)])
    L = Sublattice([(d,)] if d else [], 1)
    return MomentumData(Q, L)


# ---------------------------------------------------------------------------
# multiplicity free check

@dataclass(frozen=True)
class MomentumData:
    Q: RationalPolytope
    lattice: Sublattice  # Lambda_0


@dataclass(frozen=True)
class OracleRow:
    type: str
    simple_roots: tuple
    lattice: tuple  # HNF basis of Lambda_0
    cones: tuple  # admissible sorted ray lists


@dataclass
class LocalOracleTable:
    rows: list = field(default_factory=list)

    def lookup(self, typ: str, simple_roots, lattice: Sublattice):
        """Merged row for the key, or ``None``; rows sharing a key add up."""
        key = (typ, tuple(sorted(tuple(r) for r in simple_roots)), tuple(tuple(b) for b in lattice.basis))
        hits = [row for row in self.rows if (row.type, tuple(sorted(row.simple_roots)), row.lattice) == key]
        if not hits:
            return None
        cones = tuple(sorted({c for row in hits for c in row.cones}))
        return OracleRow(key[0], key[1], key[2], cones)


@dataclass(frozen=True)
class PointReport:
    point: tuple
    local_type: str
    cone: TangentCone
    verdict: Verdict
    rule: str  # "trivial", "rank-one", "oracle" or "missing"
    detail: str = ""


def trivial_type_criterion(cone: TangentCone, L0: Sublattice) -> tuple[bool, str]:
    """Is ``cone & L0`` isomorphic to N^k x Z^l?

    Ray generators are pushed to ``L0 / (L0 & lineality)`` and must form a
    basis there."""
    n = L0.ambient_rank
    r = L0.rank
    lin = Sublattice(cone.lineality, n)
    if not L0.rank and (cone.rays or cone.lineality):
        return False, "cone is not spanned by the lattice"
    for v in list(cone.rays) + list(cone.lineality):
        if L0.rank == 0 or L0.rational_coordinates(v) is None:
            return False, f"direction {v} is not in the span of the lattice"
    if r == 0:
        return True, "zero lattice, zero cone"
    # L0 & lineality in L0 coordinates, then its annihilator
    inter = L0.intersection(lin)
    sub = [list(L0.coordinates(b)) for b in inter.basis]
    phi = integer_kernel(sub, r) if sub else [[int(i == j) for j in range(r)] for i in range(r)]
    k = len(phi)
    images = []
    for ray in cone.rays:
        y = L0.rational_coordinates(ray)
        images.append(primitive(matvec(phi, y)))
    if len(images) != k:
        return False, f"{len(images)} rays for a quotient lattice of rank {k}"
    if k == 0:
        return True, "cone is a linear subspace"
    d = det([list(v) for v in images])
    return abs(d) == 1, f"determinant {d}"


def rank_one_rule(Phi_a: RootDatum, cone: TangentCone, L0: Sublattice):
    """Built-in rows for a local root system of type A1.

    ``None`` means no row applies."""
    alpha = Phi_a.roots[Phi_a.positive[0]]
    co = Phi_a.coroots[Phi_a.positive[0]]
    if not cone.rays and not cone.lineality and L0.rank == 0:
        return True, "point on the wall with zero lattice"
    if len(cone.rays) == 1 and not cone.lineality and L0.rank == 1:
        g = cone.rays[0]
        lam = L0.basis[0]
        if rank([g, alpha]) == 1 and rank([lam, alpha]) == 1 and dot(g, co) > 0:
            d = abs(dot(lam, co))
            return d in (1, 2, 4), f"lattice index d = {d}"
    return None


def mf_check(data: MomentumData, Phi: RootDatum, oracle: LocalOracleTable | None = None,
             faces: str = "vertices", points: Sequence | None = None):
    """Face-by-face check; returns ``(verdict, reports)``."""
    Q, L0 = data.Q, data.lattice
    if L0.ambient_rank != Q.dim or Phi.rank != Q.dim:
        raise InputError("polytope, lattice and root datum dimensions differ")
    if not chamber_containment(Q, [Phi.coroots[i] for i in Phi.positive]):
        raise InputError("polytope is not contained in the dominant chamber")
    if points is None:
        if not Q.is_bounded:
            raise InputError("unbounded polytope: supply an explicit list of face points")
        if faces == "vertices":
            points = list(Q.vertices)
        elif faces == "all":
            points = [F.sample for F in Q.faces]
        else:
            raise InputError(f"faces must be 'vertices' or 'all', not {faces!r}")
    oracle = oracle or LocalOracleTable()
    reports = []
    for a in points:
        a = tuple(Fraction(x) for x in a)
        cone = tangent_cone(Q, a)
        local = ambient_local_roots(Phi, a)
        typ = str(local.dynkin_type())
        if not local.roots:
            ok, why = trivial_type_criterion(cone, L0)
            reports.append(PointReport(a, typ, cone, Verdict.YES if ok else Verdict.NO, "trivial", why))
            continue
        if typ == "A1":
            res = rank_one_rule(local, cone, L0)
            if res is not None:
                ok, why = res
                reports.append(PointReport(a, typ, cone, Verdict.YES if ok else Verdict.NO, "rank-one", why))
                continue
        row = oracle.lookup(typ, local.simple_roots, L0)
        if row is None:
            reports.append(PointReport(a, typ, cone, Verdict.UNDECIDED, "missing", "no table row"))
            continue
        ok = cone.is_pointed and tuple(cone.rays) in row.cones
        reports.append(PointReport(a, typ, cone, Verdict.YES if ok else Verdict.NO, "oracle",
                                   "cone listed" if ok else "cone not listed"))
    verdicts = {r.verdict for r in reports}
    if Verdict.NO in verdicts:
        overall = Verdict.NO
    elif Verdict.UNDECIDED in verdicts:
        overall = Verdict.UNDECIDED
    else:
        overall = Verdict.YES
    return overall, reports
