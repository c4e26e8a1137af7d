"""Root data, Weyl groups, Cartan matrices and the combinatorics of the
abelian group scheme attached to a root datum.

Coordinates: the character lattice is ``Z^n``, the cocharacter lattice is
``Z^n`` as well and the pairing is the dot product.  The Cartan matrix is
``C[i][j] = <alpha_i, alpha_j^vee>`` (row = root, column = coroot).
Weyl group elements act on column vectors of the character lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from . import kernels
from .errors import (
    CertificateFailure,
    InfiniteIndex,
    InputError,
    NotReflection,
    NotSpecial,
    RootsNotContained,
    SingularOrAffine,
)
from .linalg import (
    Sublattice,
    det,
    dot,
    identity,
    is_direct_summand,
    matmul,
    matvec,
    nullspace,
    primitive,
    quotient_invariants,
    rank,
    solve,
    transpose,
)

WEYL_GUARD = 10**6


# ---------------------------------------------------------------------------
# reflections and closures

def reflection_matrix(root: Sequence[int], coroot: Sequence[int]) -> list[list[int]]:
    """Matrix of ``x -> x - <x, coroot> root`` on column vectors."""
    n = len(root)
    return [[int(i == j) - root[i] * coroot[j] for j in range(n)] for i in range(n)]


def reflect(x, root, coroot):
    c = dot(x, coroot)
    return tuple(a - c * r for a, r in zip(x, root))


def root_closure(simple_roots, simple_coroots):
    """All roots/coroots of the system generated by the given simple pairs.

    The generated subsystem is the orbit of the generators under the group
    generated by their reflections.
    """
    pairs = [(tuple(a), tuple(c)) for a, c in zip(simple_roots, simple_coroots)]
    pairs += [(tuple(-x for x in a), tuple(-x for x in c)) for a, c in pairs]
    seen = dict(pairs)
    queue = list(seen)
    while queue:
        a = queue.pop()
        c = seen[a]
        for s, sc in zip(simple_roots, simple_coroots):
            b = reflect(a, s, sc)
            if b not in seen:
                # s_beta acts on coroots by y -> y - <beta, y> beta^vee
                seen[b] = reflect(c, sc, s)
                queue.append(b)
    roots = sorted(seen)
    return roots, [seen[r] for r in roots]


# ---------------------------------------------------------------------------
# Cartan matrices and Dynkin types

def cartan_matrix(roots: Sequence[Sequence[int]], coroots: Sequence[Sequence[int]]) -> list[list[int]]:
    if not roots:
        raise InputError("cartan_matrix needs at least one simple root")
    return [[dot(a, c) for c in coroots] for a in roots]


_EXCEPTIONAL_ORDERS = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                       ("F", 4): 1152, ("G", 2): 12}


def weyl_order_of(letter: str, n: int) -> int:
    if letter == "A":
        return factorial(n + 1)
    if letter in "BC":
        return 2**n * factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * factorial(n)
    return _EXCEPTIONAL_ORDERS[(letter, n)]


def standard_cartan(letter: str, n: int) -> list[list[int]]:
    """Cartan matrix of an irreducible type, Bourbaki numbering."""
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j], C[j][i] = cij, cji

    if letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B" and n >= 2:
            link(n - 2, n - 1, -2, -1)
        if letter == "C" and n >= 2:
            link(n - 2, n - 1, -1, -2)
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -1, -3)
    else:
        raise ValueError(letter)
    return C


@dataclass(frozen=True)
class DynkinType:
    """Product of irreducible finite types, e.g. ``A1xB2``."""

    components: tuple  # of (letter, rank), sorted

    def __str__(self):
        return "x".join(f"{l}{n}" for l, n in self.components) or "trivial"

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    @property
    def weyl_order(self) -> int:
        order = 1
        for l, n in self.components:
            order *= weyl_order_of(l, n)
        return order


def _components(C):
    n = len(C)
    left = set(range(n))
    comps = []
    while left:
        stack = [min(left)]
        comp = set(stack)
        while stack:
            i = stack.pop()
            for j in range(n):
                if j not in comp and C[i][j] != 0:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        comps.append(sorted(comp))
    return comps


def _affine_witness(C) -> str:
    if det(C) == 0:
        ker = nullspace(C)
        if ker:
            return f"; singular, kernel vector {primitive(ker[0])}"
    return ""


def _identify_component(C, nodes):
    sub = [[C[i][j] for j in nodes] for i in nodes]
    n = len(nodes)
    if n == 1:
        return ("A", 1), sub
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if sub[i][j]:
                m = sub[i][j] * sub[j][i]
                if m not in (1, 2, 3):
                    raise SingularOrAffine(
                        f"edge weight {m} between simple roots {nodes[i]}, {nodes[j]} "
                        f"is not of finite type{_affine_witness(sub)}")
                edges[(i, j)] = m
    if len(edges) != n - 1:
        raise SingularOrAffine(f"Dynkin graph has a cycle{_affine_witness(sub)}")
    deg = [0] * n
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    weights = sorted(edges.values())
    if 3 in weights:
        if n == 2:
            return ("G", 2), sub
        raise SingularOrAffine(f"triple bond in rank {n} diagram{_affine_witness(sub)}")
    doubles = [e for e, m in edges.items() if m == 2]
    if len(doubles) > 1:
        raise SingularOrAffine(f"two double bonds{_affine_witness(sub)}")
    if doubles:
        if max(deg) > 2:
            raise SingularOrAffine(f"branched diagram with a double bond{_affine_witness(sub)}")
        if n == 2:
            return ("B", 2), sub
        u, v = doubles[0]
        ends = [i for i in range(n) if deg[i] == 1]
        if u in ends or v in ends:
            e, f = (u, v) if u in ends else (v, u)
            # C[f][e] = <alpha_f, alpha_e^vee> is -2 exactly when alpha_e is short
            return ("B" if sub[f][e] == -2 else "C", n), sub
        if n == 4:
            return ("F", 4), sub
        raise SingularOrAffine(f"double bond inside a rank {n} chain{_affine_witness(sub)}")
    if max(deg) <= 2:
        return ("A", n), sub
    branch = [i for i in range(n) if deg[i] >= 3]
    if len(branch) > 1 or deg[branch[0]] > 3:
        raise SingularOrAffine(f"diagram has too many branches{_affine_witness(sub)}")
    b = branch[0]
    adj = {i: [j for j in range(n) if j != i and sub[i][j]] for i in range(n)}
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n), sub
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n), sub
    raise SingularOrAffine(f"branch arms {arms} are not of finite type{_affine_witness(sub)}")


def _isomorphic(A, B) -> bool:
    n = len(A)
    order = []
    seen = set()
    for s in range(n):  # BFS order on B keeps partial matches connected
        if s in seen:
            continue
        seen.add(s)
        q = [s]
        while q:
            i = q.pop(0)
            order.append(i)
            for j in range(n):
                if j not in seen and B[i][j]:
                    seen.add(j)
                    q.append(j)
    image = {}

    def extend(k):
        if k == n:
            return True
        i = order[k]
        used = set(image.values())
        for c in range(n):
            if c in used:
                continue
            if all(A[c][image[j]] == B[i][j] and A[image[j]][c] == B[j][i] for j in image):
                image[i] = c
                if extend(k + 1):
                    return True
                del image[i]
        return False

    return extend(0)


def recognize_finite_type(C: Sequence[Sequence[int]]) -> DynkinType:
    """Finite type of a generalized Cartan matrix, up to relabelling.

    Raises :class:`SingularOrAffine` when ``C`` is not of finite type.
    """
    n = len(C)
    if n == 0 or any(len(r) != n for r in C):
        raise InputError("Cartan matrix must be square and non-empty")
    for i in range(n):
        if C[i][i] != 2:
            raise InputError("Cartan matrix diagonal must be 2")
        for j in range(n):
            if i != j and (C[i][j] > 0 or (C[i][j] == 0) != (C[j][i] == 0)):
                raise InputError(f"entry ({i},{j}) violates the generalized Cartan sign pattern")
    comps = []
    for nodes in _components(C):
        (letter, r), sub = _identify_component(C, nodes)
        if not _isomorphic(sub, standard_cartan(letter, r)):
            raise SingularOrAffine(f"component {nodes} matches no standard {letter}{r} matrix")
        comps.append((letter, r))
    return DynkinType(tuple(sorted(comps)))


# ---------------------------------------------------------------------------
# Weyl groups

@dataclass(frozen=True)
class WeylGroup:
    n: int
    generators: tuple  # flat row-major tuples
    elements: tuple  # flat tuples, canonical order (word length, entries)

    @property
    def order(self) -> int:
        return len(self.elements)

    def matrices(self):
        n = self.n
        return [[list(e[i * n:(i + 1) * n]) for i in range(n)] for e in self.elements]

    def __contains__(self, M) -> bool:
        return _flatten(M) in self._index

    @cached_property
    def _index(self):
        return set(self.elements)

    def stabilizer(self, point) -> list[tuple]:
        """Elements fixing ``point`` (a rational column vector), by brute force."""
        n = self.n
        pt = [Fraction(x) for x in point]
        out = []
        for e in self.elements:
            if all(sum(e[i * n + j] * pt[j] for j in range(n)) == pt[i] for i in range(n)):
                out.append(e)
        return out

    def reflections(self) -> list[tuple]:
        n = self.n
        out = []
        for e in self.elements:
            M = [list(e[i * n:(i + 1) * n]) for i in range(n)]
            if _is_reflection(M):
                out.append(e)
        return out


def _flatten(M) -> tuple:
    if M and isinstance(M[0], (list, tuple)):
        return tuple(int(x) for row in M for x in row)
    return tuple(int(x) for x in M)


def _is_reflection(M) -> bool:
    n = len(M)
    I_minus = [[int(i == j) - M[i][j] for j in range(n)] for i in range(n)]
    return rank(I_minus) == 1 and matmul(M, M) == identity(n)


def enumerate_weyl(generators, n: int | None = None, guard: int = WEYL_GUARD) -> WeylGroup:
    """Full element list of the group generated by order-2 matrices."""
    gens = [[list(r) for r in g] for g in generators]
    if n is None:
        if not gens:
            raise InputError("need n for an empty generator list")
        n = len(gens[0])
    for g in gens:
        if len(g) != n or any(len(r) != n for r in g):
            raise InputError("generators must be square matrices of equal size")
        if matmul(g, g) != identity(n):
            raise InputError(f"generator {g} does not have order 2")
    flat = [_flatten(g) for g in gens]
    elements, depth = kernels.weyl_closure(flat, n, guard)
    ordered = sorted(zip(depth, elements))
    return WeylGroup(n, tuple(flat), tuple(e for _, e in ordered))


# ---------------------------------------------------------------------------
# root data

@dataclass(frozen=True)
class RootDatum:
    rank: int
    roots: tuple
    coroots: tuple
    positive: tuple  # indices into roots

    def __post_init__(self):
        roots = tuple(tuple(int(x) for x in r) for r in self.roots)
        coroots = tuple(tuple(int(x) for x in c) for c in self.coroots)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "coroots", coroots)
        object.__setattr__(self, "positive", tuple(sorted(int(i) for i in self.positive)))
        self._validate()

    def _validate(self):
        n = self.rank
        if len(self.roots) != len(self.coroots):
            raise InputError("roots and coroots must be parallel lists")
        for a, c in zip(self.roots, self.coroots):
            if len(a) != n or len(c) != n:
                raise InputError(f"root {a} / coroot {c} not of length {n}")
            if dot(a, c) != 2:
                raise InputError(f"<{a}, {c}> != 2")
        index = {a: i for i, a in enumerate(self.roots)}
        if len(index) != len(self.roots):
            raise InputError("repeated root")
        coroot_set = set(self.coroots)
        for a, c in zip(self.roots, self.coroots):
            if tuple(2 * x for x in a) in index:
                raise InputError(f"datum not reduced: 2*{a} is a root")
            for b, d in zip(self.roots, self.coroots):
                if reflect(b, a, c) not in index:
                    raise InputError(f"s_{a} does not permute the roots")
                if reflect(d, c, a) not in coroot_set:
                    raise InputError(f"s_{c} does not permute the coroots")
        pos = set(self.positive)
        if any(i < 0 or i >= len(self.roots) for i in pos):
            raise InputError("positive index out of range")
        for i, a in enumerate(self.roots):
            neg = index.get(tuple(-x for x in a))
            if neg is None:
                raise InputError(f"-{a} is not a root")
            if (i in pos) == (neg in pos):
                raise InputError(f"exactly one of {a}, -{a} must be positive")
        # positive roots must be non-negative combinations of the simple ones
        simple = [self.roots[i] for i in self.simple_indices]
        if simple and rank(simple) != len(simple):
            raise InputError("positive system is not induced by a chamber")
        for i in self.positive:
            c = solve(transpose(simple), self.roots[i]) if simple else None
            if c is None or any(x < 0 for x in c):
                raise InputError("positive system is not induced by a chamber")

    # construction helpers -------------------------------------------------

    @classmethod
    def from_simple(cls, rank_: int, simple_roots, simple_coroots, chamber_point=None) -> "RootDatum":
        roots, coroots = root_closure(simple_roots, simple_coroots) if simple_roots else ([], [])
        if chamber_point is None:
            rho = _dual_rho(simple_roots, rank_)
            positive = [i for i, a in enumerate(roots) if dot(a, rho) > 0]
        else:
            positive = _positive_by_point(roots, coroots, chamber_point)
        return cls(rank_, tuple(roots), tuple(coroots), tuple(positive))

    @classmethod
    def from_cartan(cls, C, lattice: str = "root") -> "RootDatum":
        """Adjoint (``lattice='root'``) or simply connected
        (``lattice='weight'``) datum with the given Cartan matrix."""
        n = len(C)
        if lattice == "root":
            simple = [[int(i == j) for j in range(n)] for i in range(n)]
            cos = [[C[i][j] for i in range(n)] for j in range(n)]
        elif lattice == "weight":
            simple = [list(C[i]) for i in range(n)]
            cos = [[int(i == j) for i in range(n)] for j in range(n)]
        else:
            raise ValueError(lattice)
        return cls.from_simple(n, simple, cos)

    # derived data -----------------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {a: i for i, a in enumerate(self.roots)}

    @cached_property
    def simple_indices(self) -> tuple:
        pos = [self.roots[i] for i in self.positive]
        sums = {tuple(x + y for x, y in zip(a, b)) for a in pos for b in pos}
        return tuple(i for i in self.positive if self.roots[i] not in sums)

    @property
    def simple_roots(self):
        return [self.roots[i] for i in self.simple_indices]

    @property
    def simple_coroots(self):
        return [self.coroots[i] for i in self.simple_indices]

    @property
    def positive_roots(self):
        return [self.roots[i] for i in self.positive]

    def coroot_of(self, root) -> tuple:
        return self.coroots[self.index[tuple(root)]]

    def reflection(self, i: int) -> list[list[int]]:
        return reflection_matrix(self.roots[i], self.coroots[i])

    @cached_property
    def weyl_group(self) -> WeylGroup:
        return enumerate_weyl([self.reflection(i) for i in self.simple_indices], self.rank)

    def cartan(self) -> list[list[int]]:
        return cartan_matrix(self.simple_roots, self.simple_coroots)

    def dynkin_type(self) -> DynkinType:
        if not self.simple_indices:
            return DynkinType(())
        return recognize_finite_type(self.cartan())

    def local_indices(self, point) -> list[int]:
        """Indices of roots whose coroot vanishes at ``point``."""
        pt = [Fraction(x) for x in point]
        return [i for i, c in enumerate(self.coroots) if dot(pt, c) == 0]

    def subdatum(self, indices) -> "RootDatum":
        idx = sorted(set(indices))
        pos = set(self.positive)
        return RootDatum(self.rank, tuple(self.roots[i] for i in idx),
                         tuple(self.coroots[i] for i in idx),
                         tuple(k for k, i in enumerate(idx) if i in pos))

    def root_lattice(self) -> Sublattice:
        return Sublattice(self.roots, self.rank)

    def transform(self, basis) -> "RootDatum":
        """Re-express the datum over the sublattice with the given basis rows
        (roots must lie in it).  Coroots become ``<b_i, coroot>``."""
        L = Sublattice(basis, self.rank)
        B = [list(b) for b in basis]
        if len(B) != self.rank or det(B) == 0:
            raise InputError("transform needs a basis of full rank")
        Bt = transpose(B)
        roots = []
        for a in self.roots:
            c = solve(Bt, a)
            if c is None or any(x.denominator != 1 for x in c):
                raise RootsNotContained(f"root {a} not in {L!r}")
            roots.append(tuple(int(x) for x in c))
        coroots = [tuple(matvec(B, c)) for c in self.coroots]
        return RootDatum(self.rank, tuple(roots), tuple(coroots), self.positive)


def _dual_rho(simple_roots, n):
    """Rational vector pairing to 1 with every simple root."""
    if not simple_roots:
        return [Fraction(0)] * n
    x = solve([list(a) for a in simple_roots], [1] * len(simple_roots))
    if x is None:
        raise InputError("simple roots are linearly dependent")
    return x


def _generic_vector(coroots, n):
    bound = 1 + max((abs(x) for c in coroots for x in c), default=1) * n
    base = bound + 1
    while True:
        g = [base**k for k in range(n)]
        if all(dot(g, c) != 0 for c in coroots):
            return g
        base += 1


def _positive_by_point(roots, coroots, point):
    """Positive roots of the closed chamber containing ``point``; ties on
    walls through the point are broken by a generic vector."""
    pt = [Fraction(x) for x in point]
    n = len(pt)
    g = _generic_vector(coroots, n)
    return [i for i, c in enumerate(coroots) if (dot(pt, c), dot(g, c)) > (0, 0)]


# ---------------------------------------------------------------------------
# maximal root system of a reflection group

def phi_max(W: WeylGroup, n: int | None = None, chamber_point=None) -> RootDatum:
    """Root datum with Weyl group ``W`` whose coroots are all primitive."""
    n = W.n if n is None else n
    for g in W.generators:
        M = [list(g[i * n:(i + 1) * n]) for i in range(n)]
        if M != identity(n) and not _is_reflection(M):
            I_minus = [[int(i == j) - M[i][j] for j in range(n)] for i in range(n)]
            raise NotReflection(f"generator fixes a subspace of codimension {rank(I_minus)}")
    pairs = {}
    for e in W.reflections():
        S = [list(e[i * n:(i + 1) * n]) for i in range(n)]
        St = transpose(S)
        image = [[int(i == j) - St[i][j] for j in range(n)] for i in range(n)]
        col = next(c for c in transpose(image) if any(c))
        co = primitive(col)
        x = _unit_preimage(co)
        # S = I - a c^T with c = k * co, so x - Sx = k a and <k a, co> = 2
        root = tuple(a - b for a, b in zip(x, matvec(S, x)))
        assert dot(root, co) == 2
        pairs[root] = co
        pairs[tuple(-r for r in root)] = tuple(-c for c in co)
    roots = sorted(pairs)
    coroots = [pairs[r] for r in roots]
    if chamber_point is None:
        chamber_point = [0] * n
    positive = _positive_by_point(roots, coroots, chamber_point)
    return RootDatum(n, tuple(roots), tuple(coroots), tuple(positive))


def _unit_preimage(v):
    """Integer ``x`` with ``<x, v> = 1`` for a primitive ``v``."""
    # extended gcd over the coordinates
    n = len(v)
    g, coeffs = 0, [0] * n
    for i, a in enumerate(v):
        if a == 0:
            continue
        if g == 0:
            g, coeffs = a, [0] * n
            coeffs[i] = 1
            continue
        d, s, t = _egcd(g, a)
        coeffs = [s * c for c in coeffs]
        coeffs[i] += t
        g = d
    if g < 0:
        coeffs = [-c for c in coeffs]
        g = -g
    if g != 1:
        raise InputError(f"{v} is not primitive")
    return coeffs


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0)
    d, s, t = _egcd(b, a % b)
    return (d, t, s - (a // b) * t)


# ---------------------------------------------------------------------------
# special roots and their involutions

@dataclass(frozen=True)
class SpecialRoot:
    root: tuple
    coroot: tuple
    short_roots: tuple  # positive short roots of the B_n summand
    summand_type: str
    pairing_is_identity: bool
    direct_summand: bool


def _is_special(coroot) -> bool:
    return all(x % 2 == 0 for x in coroot)


def _orbit(Phi: RootDatum, root):
    seen = {tuple(root)}
    queue = [tuple(root)]
    simple = list(zip(Phi.simple_roots, Phi.simple_coroots))
    while queue:
        a = queue.pop()
        for s, sc in simple:
            b = reflect(a, s, sc)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def _component(Phi: RootDatum, i: int) -> list[int]:
    comp = {i}
    stack = [i]
    while stack:
        k = stack.pop()
        for j in range(len(Phi.roots)):
            if j not in comp and (dot(Phi.roots[k], Phi.coroots[j]) or dot(Phi.roots[j], Phi.coroots[k])):
                comp.add(j)
                stack.append(j)
    return sorted(comp)


def _special_certificate(Phi: RootDatum, i: int) -> SpecialRoot:
    root, co = Phi.roots[i], Phi.coroots[i]
    pos = set(Phi.positive)
    short = sorted(a for a in _orbit(Phi, root) if Phi.index[a] in pos)
    comp = Phi.subdatum(_component(Phi, i))
    typ = str(comp.dynkin_type())
    k = len(short)
    expected = "A1" if k == 1 else f"B{k}"
    halves = [tuple(x // 2 for x in Phi.coroot_of(a)) for a in short]
    pairing = [[dot(a, h) for h in halves] for a in short]
    cert = SpecialRoot(
        root=root,
        coroot=co,
        short_roots=tuple(short),
        summand_type=typ,
        pairing_is_identity=pairing == identity(k),
        direct_summand=is_direct_summand(Sublattice(short, Phi.rank)),
    )
    if typ != expected or not cert.pairing_is_identity or not cert.direct_summand:
        raise CertificateFailure(
            f"special root {root}: component type {typ}, expected {expected}; "
            f"pairing identity {cert.pairing_is_identity}, direct summand {cert.direct_summand}")
    return cert


def special_roots(Phi: RootDatum) -> list[SpecialRoot]:
    """Positive roots ``alpha`` with ``alpha^vee / 2`` in the cocharacter
    lattice, each with its type-B direct-summand certificate."""
    return [_special_certificate(Phi, i) for i in Phi.positive if _is_special(Phi.coroots[i])]


@dataclass(frozen=True)
class SpecialInvolution:
    """Character ``chi -> (-1)^<chi, v>`` for a mod-2 cocharacter ``v``."""

    vector: tuple  # entries in {0, 1}
    short_roots: tuple

    def __call__(self, chi) -> int:
        return -1 if dot(chi, self.vector) % 2 else 1

    def is_invariant(self, W: WeylGroup) -> bool:
        n = W.n
        for g in W.generators:
            # epsilon(w chi) = epsilon(chi) for all chi  <=>  w^T v = v mod 2
            wt_v = [sum(g[j * n + i] * self.vector[j] for j in range(n)) for i in range(n)]
            if any((a - b) % 2 for a, b in zip(wt_v, self.vector)):
                return False
        return True


def special_involution(Phi: RootDatum, root) -> SpecialInvolution:
    i = Phi.index.get(tuple(root))
    if i is None or not _is_special(Phi.coroots[i]):
        raise NotSpecial(f"{tuple(root)} is not a special root")
    if i not in Phi.positive:
        i = Phi.index[tuple(-x for x in root)]
    cert = _special_certificate(Phi, i)
    v = [0] * Phi.rank
    for a in cert.short_roots:
        half = [x // 2 for x in Phi.coroot_of(a)]
        v = [x + y for x, y in zip(v, half)]
    return SpecialInvolution(tuple(x % 2 for x in v), cert.short_roots)


# ---------------------------------------------------------------------------
# group scheme fibers and global sections

@dataclass(frozen=True)
class DiagonalizableGroupDescriptor:
    """``Hom(Z^r + torsion, C^x)``: a torus of rank ``torus_rank`` times
    the finite group with the given invariant factors."""

    torus_rank: int
    torsion: tuple = ()

    @classmethod
    def of_quotient(cls, L: Sublattice) -> "DiagonalizableGroupDescriptor":
        free, tors = quotient_invariants(L)
        return cls(free, tuple(tors))

    @property
    def component_count(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self):
        parts = [f"(C^x)^{self.torus_rank}"] if self.torus_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " x ".join(parts) or "trivial"


@dataclass(frozen=True)
class FiberStructure:
    semisimple: DiagonalizableGroupDescriptor
    unipotent_rank: int
    local_roots: tuple = field(default=())


def fiber_structure(Phi: RootDatum, point) -> FiberStructure:
    if len(point) != Phi.rank:
        raise InputError(f"point must have {Phi.rank} coordinates")
    local = [Phi.roots[i] for i in Phi.local_indices(point)]
    L = Sublattice(local, Phi.rank)
    return FiberStructure(DiagonalizableGroupDescriptor.of_quotient(L), L.rank, tuple(local))


def global_sections(Phi: RootDatum) -> DiagonalizableGroupDescriptor:
    return DiagonalizableGroupDescriptor.of_quotient(Phi.root_lattice())


def component_injectivity_check(Phi_max: RootDatum, sub_roots) -> bool:
    """Is ``(Lambda/<sub>)_torsion -> Lambda/<Delta_max>`` injective?"""
    n = Phi_max.rank
    R = Phi_max.root_lattice()
    Rs = Sublattice(sub_roots, n)
    if not R.contains_lattice(Rs):
        raise InputError("subsystem roots are not in the root lattice")
    # kernel = (sat(Rs) intersect R) / Rs
    K = Rs.saturation().intersection(R)
    if K.rank == 0:
        return True
    coords = [K.coordinates(b) for b in Rs.basis]
    _, torsion = quotient_invariants(Sublattice(coords, K.rank)) if coords else (K.rank, [])
    return not torsion and len(coords) == K.rank


def lattice_change_group(Phi: RootDatum, sublattice) -> DiagonalizableGroupDescriptor:
    """``E = Hom(Lambda/Lambda', C^x)`` for ``Lambda'`` containing the roots."""
    L = sublattice if isinstance(sublattice, Sublattice) else Sublattice(sublattice, Phi.rank)
    if L.rank < Phi.rank:
        raise InfiniteIndex(f"sublattice of rank {L.rank} has infinite index in Z^{Phi.rank}")
    missing = [a for a in Phi.roots if a not in L]
    if missing:
        raise RootsNotContained(f"roots {missing} not in the sublattice")
    return DiagonalizableGroupDescriptor.of_quotient(L)
