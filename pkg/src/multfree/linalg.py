"""Exact integer and rational linear algebra.

Matrices are plain lists of rows.  Integer matrices hold Python ints,
rational ones hold :class:`fractions.Fraction`.  Nothing here ever touches
floating point.

Conventions:

* a lattice is described by generator *rows*; :func:`hnf` returns the
  canonical row basis, so two sublattices are equal iff their HNFs agree;
* :func:`smith_normal_form` returns ``U, D, V`` with ``U * A * V == D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


# ---------------------------------------------------------------------------
# small helpers

def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    Bt = list(zip(*B))
    if not Bt:
        return [[] for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector that is
    integral with coprime entries.  The zero vector maps to itself."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def as_int_vector(v: Iterable) -> tuple[int, ...]:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        out.append(int(x))
    return tuple(out)


# ---------------------------------------------------------------------------
# rational elimination

def rref(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return M, []
    m, n = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def det(A: Sequence[Sequence]):
    """Exact determinant (Bareiss for integer input, Gauss otherwise)."""
    n = len(A)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in A for x in row):
        M = [list(row) for row in A]
        sign, prev = 1, 1
        for k in range(n - 1):
            if M[k][k] == 0:
                p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
                if p is None:
                    return 0
                M[k], M[p] = M[p], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        return sign * M[n - 1][n - 1]
    M = [[Fraction(x) for x in row] for row in A]
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            d = -d
        d *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return d


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel ``{x : A x = 0}`` over Q."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in enumerate(piv):
            x[c] = -R[r][f]
        basis.append(x)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution of ``A x = b`` or ``None``."""
    if not A:
        return None if any(b) else []
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(piv):
        x[c] = R[r][n]
    return x


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R[:n]]


# ---------------------------------------------------------------------------
# Hermite normal form

def hnf(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Zero rows are dropped; pivots are positive and the entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    M = [[int(x) for x in row] for row in A if any(row)]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        # gcd-reduce column c over rows r..end
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
            r += 1
        M = M[:r] + [row for row in M[r:] if any(row)]
    return [row for row in M if any(row)]


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SmithDecomposition:
    U: list
    D: list
    V: list

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def elementary_divisors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [x - q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (D, V):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // D[t][t])
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // D[t][t])
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i1, j1 = min(rest)
                if i1 != t:
                    swap_rows(t, i1)
                else:
                    swap_cols(t, j1)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            # pull the offending row up so the pivot can absorb it
            add_row(t, bad[0], -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(U, D, V)


def elementary_divisors(A: Sequence[Sequence[int]]) -> list[int]:
    if not A or not A[0]:
        return []
    return smith_normal_form(A).elementary_divisors


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """HNF basis of ``{x in Z^n : A x = 0}`` (always saturated)."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    rows = [row for row in A if any(row)]
    if not rows:
        return identity(ncols)
    snf = smith_normal_form(rows)
    r = len(snf.elementary_divisors)
    cols = [[snf.V[i][j] for i in range(ncols)] for j in range(r, ncols)]
    return hnf(cols, ncols)


# ---------------------------------------------------------------------------
# sublattices

class Sublattice:
    """A subgroup of Z^n given by generators; compared through its HNF."""

    __slots__ = ("ambient_rank", "generators", "basis")

    def __init__(self, generators: Iterable[Sequence[int]] = (), ambient_rank: int | None = None):
        gens = [as_int_vector(g) for g in generators]
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient_rank required for an empty generator list")
            ambient_rank = len(gens[0])
        for g in gens:
            if len(g) != ambient_rank:
                raise ValueError(f"generator {g} does not live in Z^{ambient_rank}")
        self.ambient_rank = ambient_rank
        self.generators = tuple(gens)
        self.basis = tuple(tuple(row) for row in hnf(gens, ambient_rank))

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(identity(n), n)

    @classmethod
    def zero(cls, n: int) -> "Sublattice":
        return cls((), n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"Sublattice({[list(b) for b in self.basis]}, ambient_rank={self.ambient_rank})"

    def __eq__(self, other):
        if not isinstance(other, Sublattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return Sublattice(self.basis + other.basis, self.ambient_rank)

    def rational_coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Coefficients of ``v`` in the HNF basis, or ``None`` if ``v`` is
        outside the rational span."""
        v = [Fraction(x) for x in v]
        coords = []
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            c = v[p] / row[p]
            coords.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            return None
        return coords

    def coordinates(self, v: Sequence) -> list[int]:
        c = self.rational_coordinates(v)
        if c is None or not is_integral(c):
            raise ValueError(f"{tuple(v)} is not in {self!r}")
        return [int(x) for x in c]

    def __contains__(self, v) -> bool:
        c = self.rational_coordinates(v)
        return c is not None and is_integral(c)

    def contains_lattice(self, other: "Sublattice") -> bool:
        return all(b in self for b in other.basis)

    def saturation(self) -> "Sublattice":
        """The lattice points of the rational span."""
        if not self.basis:
            return self
        perp = integer_kernel(self.basis, self.ambient_rank)
        if not perp:
            return Sublattice.full(self.ambient_rank)
        return Sublattice(integer_kernel(perp, self.ambient_rank), self.ambient_rank)

    def is_saturated(self) -> bool:
        return is_direct_summand(self)

    def intersection(self, other: "Sublattice") -> "Sublattice":
        n = self.ambient_rank
        A, B = list(self.basis), list(other.basis)
        if not A or not B:
            return Sublattice.zero(n)
        # x A = y B  <=>  (x, y) in kernel of [A ; -B]^T
        M = transpose(A + [[-b for b in row] for row in B])
        ker = integer_kernel(M, len(A) + len(B))
        gens = [matvec(transpose(A), k[:len(A)]) for k in ker]
        return Sublattice(gens, n)

    def index_in(self, other: "Sublattice") -> int:
        """``[other : self]``; requires ``self`` of full rank in ``other``."""
        if not other.contains_lattice(self):
            raise ValueError("not a sublattice")
        if self.rank != other.rank:
            raise ValueError("infinite index")
        coords = [other.coordinates(b) for b in self.basis]
        return abs(det(coords)) if coords else 1

    def quotient_invariants(self) -> tuple[int, list[int]]:
        return quotient_invariants(self)


def _as_sublattice(L, ambient: int | None) -> Sublattice:
    if isinstance(L, Sublattice):
        if ambient is not None and ambient != L.ambient_rank:
            raise ValueError("ambient rank mismatch")
        return L
    return Sublattice(L, ambient)


def quotient_invariants(L, ambient: int | None = None) -> tuple[int, list[int]]:
    """Free rank and torsion factors (``> 1``, divisibility chain) of
    ``Z^ambient / L``."""
    L = _as_sublattice(L, ambient)
    divs = elementary_divisors(list(L.basis)) if L.basis else []
    return L.ambient_rank - len(divs), [d for d in divs if d > 1]


def is_direct_summand(L, ambient: int | None = None) -> bool:
    L = _as_sublattice(L, ambient)
    return not quotient_invariants(L)[1]


def fixed_sublattice(mats: Sequence[Sequence[Sequence[int]]], n: int | None = None) -> Sublattice:
    """Lattice of vectors fixed by every matrix (acting on column vectors)."""
    if n is None:
        if not mats:
            raise ValueError("need n when no matrices are given")
        n = len(mats[0])
    rows = []
    for M in mats:
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError("matrices must be square of equal size")
        rows.extend([M[i][j] - (i == j) for j in range(n)] for i in range(n))
    return Sublattice(integer_kernel(rows, n) if rows else identity(n), n)
