"""Cech cohomology of the sheaf K+ on a polytope.

Sections of K+ over a piece U are affine functions ``<z, gamma> + c``
where ``gamma`` pairs to zero with every simple root whose wall meets
``U`` (within the polytope).  The lattice part and the rational constant
part never interact, so they are handled as two separate complexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CoverError, EmptyIntersection, EmptyPolytope, NotDirectSum
from .linalg import (
    Sublattice,
    dot,
    elementary_divisors,
    fixed_sublattice,
    integer_kernel,
    matmul,
    matvec,
    rank,
)
from .polytope import RationalPolytope, hyperplane_meets
from .roots import DiagonalizableGroupDescriptor, RootDatum, lattice_change_group


# ---------------------------------------------------------------------------
# change of lattice

@dataclass(frozen=True)
class Phi0Reduction:
    lattice: Sublattice  # Lambda_0 = R + Lambda^W inside Lambda
    E: DiagonalizableGroupDescriptor
    datum: RootDatum  # Phi_0 in coordinates of ``basis``
    basis: tuple  # rows: root lattice HNF, then fixed lattice HNF


def reduce_to_phi0(Phi: RootDatum) -> Phi0Reduction:
    n = Phi.rank
    R = Phi.root_lattice()
    gens = [Phi.reflection(i) for i in Phi.simple_indices]
    fixed = fixed_sublattice(gens, n) if gens else Sublattice.full(n)
    if R.intersection(fixed).rank != 0:
        raise NotDirectSum("root lattice meets the W-fixed lattice")
    if R.rank + fixed.rank != n:
        raise NotDirectSum("root lattice plus fixed lattice has infinite index")
    L0 = R + fixed
    E = lattice_change_group(Phi, L0)
    basis = [tuple(b) for b in R.basis] + [tuple(b) for b in fixed.basis]
    return Phi0Reduction(L0, E, Phi.transform(basis), tuple(basis))


def transform_polytope(P: RationalPolytope, basis) -> RationalPolytope:
    """Rewrite ``P`` in coordinates ``y`` with ``x = B^T y``."""
    B = [list(b) for b in basis]
    return RationalPolytope(P.dim, [(matvec(B, n), b) for n, b in P.inequalities])


# ---------------------------------------------------------------------------
# sections

@dataclass(frozen=True)
class SectionGroup:
    lattice: Sublattice  # gamma part in the cocharacter lattice
    active_roots: tuple  # simple roots whose walls meet the domain
    rational_rank: int = 1


def _active(Phi0: RootDatum, V: RationalPolytope):
    return tuple(a for a, c in zip(Phi0.simple_roots, Phi0.simple_coroots) if hyperplane_meets(V, c)[0])


def _section_lattice(n, active):
    if not active:
        return Sublattice.full(n)
    return Sublattice(integer_kernel([list(a) for a in active], n), n)


def sections_kplus(Phi0: RootDatum, P: RationalPolytope, U: RationalPolytope | None = None,
                   constant: bool = False) -> SectionGroup:
    try:
        V = P if U is None else P.intersect(U)
    except EmptyPolytope:
        raise EmptyIntersection("piece does not meet the polytope") from None
    active = () if constant else _active(Phi0, V)
    return SectionGroup(_section_lattice(P.dim, active), active)


def taylor_invariance_check(gamma, c, Phi0: RootDatum, P: RationalPolytope) -> bool:
    """Is ``<z, gamma> + c`` invariant to all orders at every face?"""
    for F in P.faces:
        for i in Phi0.local_indices(F.sample):
            if dot(Phi0.roots[i], gamma) != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# covers

def shrink(U: RationalPolytope, P: RationalPolytope, eps) -> RationalPolytope:
    """Push every face of ``U`` that is not a face of ``P`` inward by ``eps``."""
    eps = Fraction(eps)
    own = set(P.inequalities)
    return RationalPolytope(U.dim, [(n, b if (n, b) in own else b + eps) for n, b in U.inequalities])


def _grid_points(P: RationalPolytope, den: int = 4):
    V = P.vertices
    k = len(V)

    def weights(total, parts):
        if parts == 1:
            yield (total,)
            return
        for i in range(total + 1):
            for rest in weights(total - i, parts - 1):
                yield (i,) + rest

    for w in weights(den, k):
        yield tuple(sum((Fraction(wi, den) * v[j] for wi, v in zip(w, V)), Fraction(0)) for j in range(P.dim))


class ConvexCover:
    """Closed convex pieces covering a bounded polytope, with their nerve."""

    def __init__(self, P: RationalPolytope, pieces: Sequence[RationalPolytope], check: bool = True):
        self.polytope = P
        self.pieces = tuple(pieces)
        if not self.pieces:
            raise CoverError("cover has no pieces")
        for U in self.pieces:
            if U.dim != P.dim:
                raise CoverError("piece dimension differs from the polytope")
        self.nerve = self._nerve()
        if check:
            bad = self.uncovered_points()
            if bad:
                raise CoverError(f"point {tuple(str(x) for x in bad[0])} is not covered")

    def _nerve(self):
        P = self.polytope
        out = {}
        level = []
        for i, U in enumerate(self.pieces):
            try:
                out[(i,)] = P.intersect(U)
                level.append((i,))
            except EmptyPolytope:
                pass
        while level:
            nxt = []
            for s in level:
                for j in range(s[-1] + 1, len(self.pieces)):
                    if all((k,) in out for k in s + (j,)):
                        try:
                            out[s + (j,)] = out[s].intersect(self.pieces[j])
                            nxt.append(s + (j,))
                        except EmptyPolytope:
                            pass
            level = nxt
        return dict(sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def simplices(self, p: int):
        return [s for s in self.nerve if len(s) == p + 1]

    def uncovered_points(self):
        P = self.polytope
        pts = [F.sample for F in P.faces] + list(_grid_points(P))
        return [x for x in pts if not any(U.contains(x) for U in self.pieces)]


# ---------------------------------------------------------------------------
# the complex

@dataclass(frozen=True)
class DegreeCohomology:
    degree: int
    free_rank: int
    torsion: tuple
    rational_betti: int

    @property
    def vanishes(self) -> bool:
        return self.free_rank == 0 and not self.torsion and self.rational_betti == 0


@dataclass(frozen=True)
class CechResult:
    degrees: tuple  # of DegreeCohomology
    nerve: tuple
    h0_lattice: Sublattice
    global_lattice: Sublattice
    h0_matches_global: bool
    surjectivity_divisors: tuple  # elementary divisors of gamma -> (<alpha, gamma>)
    walls_meeting: tuple

    @property
    def higher_vanish(self) -> bool:
        return all(d.vanishes for d in self.degrees if d.degree >= 1)

    @property
    def surjective(self) -> bool:
        return all(x == 1 for x in self.surjectivity_divisors) and \
            len(self.surjectivity_divisors) == len(self.walls_meeting)


@dataclass(frozen=True)
class Matrix:
    """Integer matrix with an explicit shape (either side may be 0)."""

    rows: tuple
    nrows: int
    ncols: int

    def rank(self) -> int:
        return rank(self.rows) if self.nrows and self.ncols else 0

    def divisors(self) -> tuple:
        return tuple(elementary_divisors(self.rows)) if self.nrows and self.ncols else ()

    def is_zero_product(self, right: "Matrix") -> bool:
        if not (self.nrows and right.ncols and self.ncols):
            return True
        return all(x == 0 for row in matmul(self.rows, right.rows) for x in row)


class CechComplex:
    def __init__(self, Phi0: RootDatum, cover: ConvexCover, constant: bool = False):
        self.datum = Phi0
        self.cover = cover
        n = cover.polytope.dim
        self.n = n
        self.sections = {}
        for s, V in cover.nerve.items():
            active = () if constant else _active(Phi0, V)
            self.sections[s] = SectionGroup(_section_lattice(n, active), active)
        self.top = max(len(s) for s in cover.nerve) - 1
        self.lattice_d = [self._d(p, lattice=True) for p in range(self.top + 1)]
        self.rational_d = [self._d(p, lattice=False) for p in range(self.top + 1)]
        for p in range(self.top):
            for D in (self.lattice_d, self.rational_d):
                assert D[p + 1].is_zero_product(D[p]), "d o d != 0"

    def _rank_of(self, s, lattice):
        return self.sections[s].lattice.rank if lattice else 1

    def _d(self, p, lattice):
        """Alternating-sum differential C^p -> C^(p+1) in basis coordinates."""
        src = self.cover.simplices(p)
        dst = self.cover.simplices(p + 1)
        col_off, ncols = {}, 0
        for s in src:
            col_off[s] = ncols
            ncols += self._rank_of(s, lattice)
        rows = []
        for t in dst:
            block = [[0] * ncols for _ in range(self._rank_of(t, lattice))]
            for j in range(len(t)):
                face = t[:j] + t[j + 1:]
                sign = -1 if j % 2 else 1
                if lattice:
                    Lt = self.sections[t].lattice
                    for k, b in enumerate(self.sections[face].lattice.basis):
                        for r, x in enumerate(Lt.coordinates(b)):
                            block[r][col_off[face] + k] += sign * x
                else:
                    block[0][col_off[face]] += sign
            rows.extend(block)
        return Matrix(tuple(tuple(r) for r in rows), len(rows), ncols)

    def cohomology(self) -> list[DegreeCohomology]:
        out = []
        for p in range(self.top + 1):
            lat_out, rat_out = self.lattice_d[p], self.rational_d[p]
            n_lat, n_rat = lat_out.ncols, rat_out.ncols
            r_in = self.lattice_d[p - 1].rank() if p else 0
            q_in = self.rational_d[p - 1].rank() if p else 0
            torsion = tuple(x for x in self.lattice_d[p - 1].divisors() if x > 1) if p else ()
            out.append(DegreeCohomology(p, n_lat - lat_out.rank() - r_in, torsion,
                                        n_rat - rat_out.rank() - q_in))
        return out

    def h0_lattice(self) -> Sublattice:
        """``ker d^0`` mapped into the cocharacter lattice."""
        d0 = self.lattice_d[0]
        n_lat = d0.ncols
        if d0.nrows and n_lat:
            ker = integer_kernel([list(r) for r in d0.rows], n_lat)
        else:
            ker = [[int(i == j) for j in range(n_lat)] for i in range(n_lat)]
        gens = []
        for v in ker:
            images, off = set(), 0
            for s in self.cover.simplices(0):
                L = self.sections[s].lattice
                part = v[off:off + L.rank]
                off += L.rank
                images.add(tuple(sum(c * b[j] for c, b in zip(part, L.basis)) for j in range(self.n)))
            assert len(images) == 1, "a cocycle restricts differently to two pieces"
            gens.append(images.pop())
        return Sublattice(gens, self.n)


def global_kplus(Phi0: RootDatum, P: RationalPolytope, constant: bool = False) -> SectionGroup:
    return sections_kplus(Phi0, P, None, constant)


def surjectivity_certificate(Phi0: RootDatum, P: RationalPolytope):
    """Elementary divisors of ``gamma -> (<alpha, gamma>)`` over the simple
    roots whose walls meet ``P``, and those roots."""
    walls = _active(Phi0, P)
    if not walls:
        return (), ()
    return tuple(elementary_divisors([list(a) for a in walls])), walls


def cech_cohomology(Phi0: RootDatum, P: RationalPolytope, cover: ConvexCover,
                    constant: bool = False) -> CechResult:
    K = CechComplex(Phi0, cover, constant)
    degrees = tuple(K.cohomology())
    h0 = K.h0_lattice()
    glob = global_kplus(Phi0, P, constant).lattice
    divisors, walls = surjectivity_certificate(Phi0, P)
    return CechResult(degrees, tuple(cover.nerve), h0, glob, h0 == glob, divisors, walls)


def vanishing_check(Phi: RootDatum, P: RationalPolytope, pieces: Sequence[RationalPolytope],
                    strict_open=None, constant: bool = False):
    """Reduce to Phi_0, move polytope and cover into its coordinates and
    compute the Cech cohomology of K+."""
    red = reduce_to_phi0(Phi)
    if strict_open is not None:
        pieces = [shrink(U, P, strict_open) for U in pieces]
    P0 = transform_polytope(P, red.basis)
    cover = ConvexCover(P0, [transform_polytope(U, red.basis) for U in pieces])
    return red, cech_cohomology(red.datum, P0, cover, constant)
