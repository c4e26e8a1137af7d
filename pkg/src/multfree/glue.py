"""Gluing local root systems over the faces of a polytope into a global
Weyl group, and the halving step that produces the root system Phi_M."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import (
    InconsistentHalving,
    InputError,
    NonNegativePairing,
    RecoveryFailure,
)
from .linalg import Sublattice, dot, inverse, matmul, solve, transpose
from .polytope import Face, RationalPolytope
from .roots import (
    DynkinType,
    RootDatum,
    WeylGroup,
    enumerate_weyl,
    phi_max,
    recognize_finite_type,
    reflection_matrix,
    root_closure,
)


class WallMissesPolytope(UserWarning):
    """A critical wall never meets the polytope; its halving defaults to 1."""


def ambient_local_roots(Phi: RootDatum, point) -> RootDatum:
    """Subdatum of roots whose coroot vanishes at ``point``, with the
    induced positive system."""
    return Phi.subdatum(Phi.local_indices(point))


@dataclass(frozen=True)
class LocalSystem:
    roots: tuple = ()  # simple roots
    coroots: tuple = ()

    def pairs(self):
        return list(zip(self.roots, self.coroots))


class LocalSystemAssignment:
    """Simple roots ``Sigma(F)`` for every face ``F`` of a polytope.

    Faces are keyed by their tight-inequality index sets; faces that are
    not listed carry the empty system.
    """

    def __init__(self, polytope: RationalPolytope, systems: Mapping[tuple, LocalSystem]):
        self.polytope = polytope
        faces = {f.tight: f for f in polytope.faces}
        self.systems = {}
        for key, sys_ in systems.items():
            key = tuple(sorted(key))
            if key not in faces:
                raise InputError(f"no face has tight set {list(key)}")
            face = faces[key]
            roots = tuple(tuple(int(x) for x in r) for r in sys_.roots)
            coroots = tuple(tuple(int(x) for x in c) for c in sys_.coroots)
            if len(roots) != len(coroots):
                raise InputError(f"face {list(key)}: roots and coroots differ in number")
            for r, c in zip(roots, coroots):
                if dot(r, c) != 2:
                    raise InputError(f"face {list(key)}: <{r}, {c}> != 2")
                if dot(face.sample, c) != 0:
                    raise InputError(f"face {list(key)}: root {r} does not vanish on the face")
            for i, (r, _) in enumerate(zip(roots, coroots)):
                for j, c in enumerate(coroots):
                    if i != j and dot(r, c) > 0:
                        raise InputError(f"face {list(key)}: simple roots {r}, {roots[j]} pair positively")
            self.systems[key] = LocalSystem(roots, coroots)

    def at(self, face: Face) -> LocalSystem:
        return self.systems.get(face.tight, LocalSystem())

    @classmethod
    def induced(cls, Phi: RootDatum, P: RationalPolytope) -> "LocalSystemAssignment":
        systems = {}
        for f in P.faces:
            local = ambient_local_roots(Phi, f.sample)
            if local.roots:
                systems[f.tight] = LocalSystem(tuple(local.simple_roots), tuple(local.simple_coroots))
        return cls(P, systems)


@dataclass(frozen=True)
class CoherenceViolation:
    face: tuple  # tight set of the smaller face
    larger: tuple  # tight set of the face containing it
    expected: tuple
    found: tuple


def check_coherence(L: LocalSystemAssignment, P: RationalPolytope | None = None) -> list[CoherenceViolation]:
    """For faces ``F`` contained in ``F'`` check that ``Sigma(F')`` is the
    part of ``Sigma(F)`` vanishing at the sample point of ``F'``."""
    P = P or L.polytope
    out = []
    faces = P.faces
    for F in faces:
        sF = L.at(F)
        vf = set(F.vertices)
        for G in faces:
            if G is F or not vf <= set(G.vertices):
                continue
            expected = tuple(sorted(r for r, c in sF.pairs() if dot(G.sample, c) == 0))
            found = tuple(sorted(L.at(G).roots))
            if expected != found:
                out.append(CoherenceViolation(F.tight, G.tight, expected, found))
    return out


@dataclass(frozen=True)
class GluedSystem:
    simple_roots: tuple
    simple_coroots: tuple
    datum: RootDatum
    weyl: WeylGroup
    lattice: Sublattice
    dynkin_type: DynkinType

    @property
    def roots(self):
        return self.datum.roots


def glue_weyl(L: LocalSystemAssignment, P: RationalPolytope | None = None,
              lattice: Sublattice | None = None) -> GluedSystem:
    P = P or L.polytope
    n = P.dim
    sigma = {}
    for F in P.faces:
        for r, c in L.at(F).pairs():
            if sigma.setdefault(r, c) != c:
                raise InputError(f"root {r} carries two different coroots")
    roots = sorted(sigma)
    coroots = [sigma[r] for r in roots]
    for i, a in enumerate(roots):
        for j, c in enumerate(coroots):
            if i != j and dot(a, c) > 0:
                raise NonNegativePairing(f"<{a}, {roots[j]}^vee> = {dot(a, c)} > 0")
    typ = recognize_finite_type([[dot(a, c) for c in coroots] for a in roots]) if roots else DynkinType(())
    for F in P.faces:
        recovered = sorted(r for r, c in zip(roots, coroots) if dot(F.sample, c) == 0)
        if recovered != sorted(L.at(F).roots):
            raise RecoveryFailure(
                f"face {list(F.tight)}: walls through the sample point give {recovered}, "
                f"assignment gives {sorted(L.at(F).roots)}")
    datum = RootDatum.from_simple(n, roots, coroots)
    W = enumerate_weyl([reflection_matrix(a, c) for a, c in zip(roots, coroots)], n)
    lattice = lattice if lattice is not None else Sublattice.full(n)
    return GluedSystem(tuple(roots), tuple(coroots), datum, W, lattice, typ)


def local_weyl_report(G: GluedSystem, P: RationalPolytope) -> list[tuple]:
    """Per face: (tight set, |stabilizer|, |reflection subgroup|, equal?).

    The stabilizer of the sample point is computed by brute force over the
    enumerated group and compared with the group generated by the simple
    reflections whose walls pass through the point.
    """
    out = []
    n = P.dim
    for F in P.faces:
        stab = set(G.weyl.stabilizer(F.sample))
        gens = [reflection_matrix(a, c) for a, c in zip(G.simple_roots, G.simple_coroots)
                if dot(F.sample, c) == 0]
        sub = set(enumerate_weyl(gens, n).elements)
        out.append((F.tight, len(stab), len(sub), stab == sub))
    return out


# ---------------------------------------------------------------------------
# Phi_M

@dataclass(frozen=True)
class PhiM:
    datum: RootDatum  # in coordinates of the lattice basis
    basis: tuple  # rows: basis of Lambda_M in Z^n
    halving: tuple  # (simple root of Phi_max in basis coordinates, n_alpha)
    warnings: tuple = field(default=())


def _in_basis(B, x):
    y = solve(transpose(B), x)
    if y is None:
        raise InputError(f"{tuple(x)} is not in the span of the lattice")
    return y


def construct_phi_M(lattice: Sublattice, W: WeylGroup, L: LocalSystemAssignment,
                    P: RationalPolytope | None = None) -> PhiM:
    P = P or L.polytope
    n = P.dim
    if lattice.rank != n:
        raise InputError("Lambda_M must have full rank")
    B = [list(b) for b in lattice.basis]
    Bt = transpose(B)
    Bt_inv = inverse(Bt)
    # action of W on Lambda_M coordinates: y -> Bt^-1 w Bt y
    gens = []
    for g in W.generators:
        M = [list(g[i * n:(i + 1) * n]) for i in range(n)]
        Y = matmul(matmul(Bt_inv, M), Bt)
        if any(x.denominator != 1 for row in Y for x in row):
            raise InputError("W does not stabilize Lambda_M")
        gens.append([[int(x) for x in row] for row in Y])
    WM = enumerate_weyl(gens, n) if gens else enumerate_weyl([], n)
    point = _in_basis(B, P.relative_interior_point())
    pmax = phi_max(WM, n, chamber_point=point)

    faces_local = []
    for F in P.faces:
        s = L.at(F)
        local = set(root_closure(s.roots, s.coroots)[0]) if s.roots else set()
        faces_local.append((F, local))

    halving, notes = [], []
    new_roots, new_coroots = [], []
    for a, c in zip(pmax.simple_roots, pmax.simple_coroots):
        nval = Fraction(1)
        if all(x % 2 == 0 for x in a):  # critical
            amb = tuple(int(x) for x in matvecq(Bt, a))
            half = tuple(x // 2 for x in amb)
            seen = set()
            for F, local in faces_local:
                if dot(_in_basis(B, F.sample), c) != 0:
                    continue
                if amb in local:
                    seen.add(Fraction(1))
                elif half in local:
                    seen.add(Fraction(1, 2))
                else:
                    raise InconsistentHalving(
                        f"face {list(F.tight)} on the wall of {a} contains neither it nor its half")
            if len(seen) > 1:
                raise InconsistentHalving(f"faces on the wall of {a} disagree on the halving")
            if not seen:
                msg = f"critical wall of {a} misses the polytope; n_alpha = 1"
                warnings.warn(msg, WallMissesPolytope, stacklevel=2)
                notes.append(msg)
            else:
                nval = seen.pop()
        halving.append((a, nval))
        new_roots.append(tuple(int(x * nval) for x in a))
        new_coroots.append(tuple(int(x / nval) for x in c))
    datum = RootDatum.from_simple(n, new_roots, new_coroots, chamber_point=point) if new_roots \
        else RootDatum(n, (), (), ())
    return PhiM(datum, tuple(tuple(b) for b in B), tuple(halving), tuple(notes))


def matvecq(A, v):
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in A]
