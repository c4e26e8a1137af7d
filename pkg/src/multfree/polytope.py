"""Exact rational polyhedra in H-representation.

An inequality ``(normal, offset)`` means ``normal . x >= offset``.  After
canonicalization normals are primitive integer vectors and redundant
inequalities are gone.  Vertices, rays and faces are found by brute-force
subset enumeration, which is fine for the small dimensions used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import lp
from .errors import EmptyPolytope, EpsilonTooLarge, InputError, PointOutside, Unbounded
from .linalg import dot, hnf, integer_kernel, lcm, nullspace, primitive, rank, solve
from math import gcd


def _canonical(normal, offset):
    normal = [Fraction(x) for x in normal]
    offset = Fraction(offset)
    den = 1
    for x in normal:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in normal]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return None, offset
    return tuple(x // g for x in ints), offset * den / g


@dataclass(frozen=True)
class Face:
    tight: tuple  # indices of inequalities holding with equality
    vertices: tuple  # indices into the polytope's vertex list
    dim: int
    sample: tuple  # vertex average, lies in the relative interior


@dataclass(frozen=True)
class TangentCone:
    apex: tuple
    rays: tuple  # primitive integer generators of the pointed part
    lineality: tuple  # integer basis of the lineality space

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def dim(self) -> int:
        vecs = list(self.rays) + list(self.lineality)
        return rank(vecs) if vecs else 0


def cone_generators(normals: Sequence[Sequence[int]], dim: int):
    """Extreme rays (mod lineality) and a lineality basis of
    ``{d : n . d >= 0 for n in normals}``."""
    normals = [list(n) for n in normals]
    if normals:
        lin = integer_kernel(normals, dim)
    else:
        lin = [[int(i == j) for j in range(dim)] for i in range(dim)]
    lin = [tuple(v) for v in hnf(lin, dim)] if lin else []
    k = dim - len(lin)
    rays = set()
    if k > 0:
        for S in combinations(range(len(normals)), k - 1):
            M = [normals[i] for i in S] + [list(v) for v in lin]
            ns = nullspace(M, dim) if M else [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
            if len(ns) != 1:
                continue
            r = ns[0]
            vals = [dot(n, r) for n in normals]
            if all(v >= 0 for v in vals):
                rays.add(primitive(r))
            elif all(v <= 0 for v in vals):
                rays.add(primitive([-x for x in r]))
    return sorted(rays), lin


class RationalPolytope:
    """Non-empty convex polyhedron ``{x : n_i . x >= b_i}``."""

    def __init__(self, dim: int, inequalities: Sequence, canonicalize: bool = True):
        self.dim = int(dim)
        ineqs = []
        for normal, offset in inequalities:
            if len(normal) != self.dim:
                raise InputError(f"normal {list(normal)} does not have {self.dim} entries")
            n, b = _canonical(normal, offset)
            if n is None:
                if b > 0:
                    raise EmptyPolytope(f"inequality 0 >= {b} is infeasible")
                continue
            if (n, b) not in ineqs:
                ineqs.append((n, b))
        if ineqs and lp.feasible_point(ineqs, dim=self.dim) is None:
            raise EmptyPolytope("inequality system is infeasible")
        if canonicalize:
            ineqs = _drop_redundant(ineqs, self.dim)
        self.inequalities = tuple(ineqs)

    # constructors -----------------------------------------------------------

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence]) -> "RationalPolytope":
        pts = [[Fraction(x) for x in p] for p in points]
        if not pts:
            raise EmptyPolytope("no points")
        d = len(pts[0])
        # facets of the cone over (p, 1) give the inequalities of the hull
        ineqs = [(h[:d], -h[d]) for h in _cone_facets([p + [Fraction(1)] for p in pts], d + 1)]
        return cls(d, ineqs)

    @classmethod
    def cone(cls, generators: Sequence[Sequence], dim: int) -> "RationalPolytope":
        """The closed convex cone spanned by ``generators``."""
        G = [[Fraction(x) for x in g] for g in generators]
        if not any(any(g) for g in G):
            return cls(dim, [(e, 0) for e in _signed_units(dim)])
        return cls(dim, [(h, 0) for h in _cone_facets(G, dim)])

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "RationalPolytope":
        d = len(lower)
        ineqs = []
        for i in range(d):
            e = [int(i == j) for j in range(d)]
            ineqs.append((e, lower[i]))
            ineqs.append(([-x for x in e], -Fraction(upper[i])))
        return cls(d, ineqs)

    # basic queries ------------------------------------------------------------

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, inequalities={len(self.inequalities)})"

    def __eq__(self, other):
        return (isinstance(other, RationalPolytope) and self.dim == other.dim
                and set(self.inequalities) == set(other.inequalities))

    def __hash__(self):
        return hash((self.dim, frozenset(self.inequalities)))

    @property
    def normals(self):
        return [n for n, _ in self.inequalities]

    def contains(self, x) -> bool:
        return all(dot(n, x) >= b for n, b in self.inequalities)

    def tight_set(self, x) -> tuple:
        return tuple(i for i, (n, b) in enumerate(self.inequalities) if dot(n, x) == b)

    def intersect(self, other: "RationalPolytope") -> "RationalPolytope":
        """Intersection; raises :class:`EmptyPolytope` if empty."""
        if other.dim != self.dim:
            raise InputError("dimension mismatch")
        return RationalPolytope(self.dim, list(self.inequalities) + list(other.inequalities))

    def minimize(self, c) -> lp.LPResult:
        return lp.minimize(c, self.inequalities, dim=self.dim)

    @cached_property
    def _recession(self):
        return cone_generators(self.normals, self.dim)

    @property
    def rays(self):
        return self._recession[0]

    @property
    def lineality(self):
        return self._recession[1]

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    @cached_property
    def vertices(self) -> tuple:
        if self.lineality:
            return ()
        d = self.dim
        if d == 0:
            return ((),)
        found = set()
        N = self.normals
        for S in combinations(range(len(N)), d):
            A = [N[i] for i in S]
            if rank(A) < d:
                continue
            x = solve(A, [self.inequalities[i][1] for i in S])
            if x is not None and self.contains(x):
                found.add(tuple(x))
        return tuple(sorted(found))

    @cached_property
    def implicit_equalities(self) -> tuple:
        out = []
        for i, (n, b) in enumerate(self.inequalities):
            res = lp.minimize([-x for x in n], self.inequalities, dim=self.dim)
            if res.status == "optimal" and -res.value == b:
                out.append(i)
        return tuple(out)

    def relative_interior_point(self) -> tuple:
        if self.is_bounded:
            V = self.vertices
            return tuple(sum((v[j] for v in V), Fraction(0)) / len(V) for j in range(self.dim))
        eq = set(self.implicit_equalities)
        d = self.dim
        ineqs = [(list(n) + [0], b) for i, (n, b) in enumerate(self.inequalities) if i in eq]
        ineqs += [(list(n) + [-1], b) for i, (n, b) in enumerate(self.inequalities) if i not in eq]
        ineqs.append(([0] * d + [-1], -1))
        res = lp.minimize([0] * d + [-1], ineqs, dim=d + 1)
        return tuple(res.x[:d])

    # faces -------------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple:
        """All non-empty faces including the polytope itself."""
        if not self.is_bounded:
            raise Unbounded("face lattice needs a bounded polytope")
        V = self.vertices
        full = frozenset(range(len(V)))
        facet_sets = []
        for n, b in self.inequalities:
            s = frozenset(k for k, v in enumerate(V) if dot(n, v) == b)
            if s:
                facet_sets.append(s)
        sets = {full}
        frontier = [full]
        while frontier:
            new = []
            for s in frontier:
                for f in facet_sets:
                    t = s & f
                    if t and t not in sets:
                        sets.add(t)
                        new.append(t)
            frontier = new
        faces = []
        for s in sets:
            verts = sorted(s)
            pts = [V[k] for k in verts]
            sample = tuple(sum((p[j] for p in pts), Fraction(0)) / len(pts) for j in range(self.dim))
            diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
            dim = rank(diffs) if diffs else 0
            faces.append(Face(self.tight_set(sample), tuple(verts), dim, sample))
        faces.sort(key=lambda f: (f.dim, f.tight, f.vertices))
        return tuple(faces)

    def face_lattice(self) -> tuple:
        return self.faces

    def face_of(self, x) -> Face:
        if not self.contains(x):
            raise PointOutside(f"{tuple(x)} is not in the polytope")
        t = self.tight_set(x)
        for f in self.faces:
            if f.tight == t:
                return f
        raise AssertionError("no face with the tight set of a point")


def _signed_units(d):
    out = []
    for i in range(d):
        e = [int(i == j) for j in range(d)]
        out += [e, [-x for x in e]]
    return out


def _cone_facets(G, d):
    """Inequalities ``h . x >= 0`` cutting out ``cone(G)``, equations included
    as opposite pairs."""
    eqs = nullspace(G, d)
    r = rank(G)
    out = []
    for h in eqs:
        out += [list(h), [-x for x in h]]
    seen = set()
    for S in combinations(range(len(G)), r - 1):
        M = [G[i] for i in S] + [list(h) for h in eqs]
        ns = nullspace(M, d) if M else [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        if len(ns) != 1:
            continue
        h = ns[0]
        vals = [dot(h, g) for g in G]
        if all(v <= 0 for v in vals):
            h = [-x for x in h]
        elif not all(v >= 0 for v in vals):
            continue
        key = primitive(h)
        if key not in seen:
            seen.add(key)
            out.append(h)
    return out


def _drop_redundant(ineqs, dim):
    keep = list(ineqs)
    i = 0
    while i < len(keep):
        n, b = keep[i]
        rest = keep[:i] + keep[i + 1:]
        res = lp.minimize(n, rest, dim=dim) if rest else lp.LPResult("unbounded")
        if res.status == "optimal" and res.value >= b:
            keep = rest
        else:
            i += 1
    return keep


def tangent_cone(P: RationalPolytope, a) -> TangentCone:
    a = tuple(Fraction(x) for x in a)
    if len(a) != P.dim or not P.contains(a):
        raise PointOutside(f"{a} is not in the polytope")
    tight = [P.inequalities[i][0] for i in P.tight_set(a)]
    rays, lin = cone_generators(tight, P.dim)
    return TangentCone(a, tuple(rays), tuple(lin))


def hyperplane_meets(P: RationalPolytope, coroot) -> tuple[bool, tuple | None]:
    """Does ``{<x, coroot> = 0}`` meet ``P``?  Returns a rational witness."""
    if not any(coroot):
        raise InputError("coroot must be non-zero")
    x = lp.feasible_point(P.inequalities, [(list(coroot), 0)], dim=P.dim)
    return (x is not None, x)


def chamber_containment(P: RationalPolytope, coroots) -> bool:
    for c in coroots:
        res = P.minimize(c)
        if res.status == "unbounded" or res.value < 0:
            return False
    return True


def cut_corner(P: RationalPolytope, v, eps) -> RationalPolytope:
    """Cut a corner of size ``eps`` off ``P`` at the simple vertex ``v``."""
    v = tuple(Fraction(x) for x in v)
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    if v not in P.vertices:
        raise InputError(f"{v} is not a vertex")
    cone = tangent_cone(P, v)
    if len(cone.rays) != P.dim or cone.lineality:
        raise InputError(f"tangent cone at {v} is not simplicial")
    E = [list(r) for r in cone.rays]  # rows = edge generators
    normal = solve(E, [1] * P.dim)
    n, _ = _canonical(normal, 0)
    scale = dot(n, cone.rays[0])  # n . e_i is the same positive number for all i
    offset = dot(n, v) + eps * scale
    for w in P.vertices:
        if w != v and dot(n, w) <= offset:
            raise EpsilonTooLarge(f"cut of size {eps} reaches vertex {tuple(str(x) for x in w)}")
    for r in P.rays:
        if dot(n, r) <= 0:
            raise EpsilonTooLarge(f"cut plane is parallel to or meets recession ray {r}")
    return RationalPolytope(P.dim, list(P.inequalities) + [(n, offset)])
