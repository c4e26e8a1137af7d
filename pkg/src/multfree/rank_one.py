"""The rank-one group scheme: pairs (a, b) over s with a^2 - s b^2 = 1,
multiplied like the matrices [[a, s b], [b, a]].

Square roots are kept exact in Q(sqrt m).  A tiny exterior algebra on
da, db, ds with polynomial coefficients checks the symplectic identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadRoot, BaseMismatch, InputError, PositiveS
from .roots import DiagonalizableGroupDescriptor, FiberStructure


# ---------------------------------------------------------------------------
# exact quadratic numbers

def _squarefree_split(n: int) -> tuple[int, int]:
    """``n = c^2 * m`` with ``m`` square-free (sign kept in ``m``)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    c, m, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            c *= p
        if n % p == 0:
            n //= p
            m *= p
        p += 1
    return c, sign * m * n


@dataclass(frozen=True)
class Quadratic:
    """``p + q sqrt(m)`` with rational ``p, q`` and square-free ``m``."""

    p: Fraction
    q: Fraction
    m: int

    def _coerce(self, other):
        if isinstance(other, Quadratic):
            if other.m != self.m and other.q != 0 and self.q != 0:
                raise ValueError("cannot mix different quadratic fields")
            return other if other.q != 0 else Quadratic(other.p, Fraction(0), self.m)
        return Quadratic(Fraction(other), Fraction(0), self.m)

    def _field(self, other):
        return self.m if self.q != 0 else other.m

    def __add__(self, other):
        o = self._coerce(other)
        return _mk(self.p + o.p, self.q + o.q, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return _mk(-self.p, -self.q, self.m)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        m = self._field(o)
        return _mk(self.p * o.p + self.q * o.q * m, self.p * o.q + self.q * o.p, m)

    __rmul__ = __mul__

    def conjugate(self):
        return _mk(self.p, -self.q, self.m)

    def norm(self) -> Fraction:
        return self.p * self.p - self.m * self.q * self.q

    def __truediv__(self, other):
        o = self._coerce(other)
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError
        c = self * o.conjugate()
        return _mk(c.p / nrm, c.q / nrm, c.m)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, Quadratic):
            return self.p == other.p and self.q == other.q and (self.q == 0 or self.m == other.m)
        return NotImplemented

    def __hash__(self):
        return hash(self.p) if self.q == 0 else hash((self.p, self.q, self.m))

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        root = f"{self.q}*sqrt({self.m})"
        return root if self.p == 0 else f"{self.p} + {root}"


def _mk(p, q, m):
    return Quadratic(Fraction(p), Fraction(q), m)


def exact_sqrt(s) -> Fraction | Quadratic:
    """Exact square root of a rational: rational when possible."""
    s = Fraction(s)
    if s == 0:
        return Fraction(0)
    # sqrt(n/d) = sqrt(n d) / d
    c, m = _squarefree_split(s.numerator * s.denominator)
    if m == 1:
        return Fraction(c, s.denominator)
    return _mk(0, Fraction(c, s.denominator), m)


# ---------------------------------------------------------------------------
# group law

@dataclass(frozen=True)
class RankOneElement:
    a: object
    b: object
    s: Fraction

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not isinstance(v, Quadratic):
                object.__setattr__(self, name, Fraction(v))
        object.__setattr__(self, "s", Fraction(self.s))
        if self.a * self.a - self.s * self.b * self.b != 1:
            raise InputError(f"a^2 - s b^2 != 1 for ({self.a}, {self.b}, {self.s})")

    @classmethod
    def identity(cls, s) -> "RankOneElement":
        return cls(1, 0, s)

    def matrix(self):
        return [[self.a, self.s * self.b], [self.b, self.a]]

    def inverse(self) -> "RankOneElement":
        return RankOneElement(self.a, -self.b, self.s)

    def __mul__(self, other):
        return multiply(self, other)


def multiply(u: RankOneElement, v: RankOneElement) -> RankOneElement:
    if u.s != v.s:
        raise BaseMismatch(f"base points differ: {u.s} != {v.s}")
    s = u.s
    return RankOneElement(u.a * v.a + s * u.b * v.b, u.a * v.b + v.a * u.b, s)


@dataclass(frozen=True)
class FiberDescriptor:
    s: Fraction
    structure: FiberStructure
    real_form: str  # "split", "compact" or "degenerate"


def fiber_decompose(s) -> FiberDescriptor:
    s = Fraction(s)
    if s == 0:
        # {+-1} x additive line: (a1, b1)(a2, b2) = (a1 a2, a1 b2 + a2 b1)
        st = FiberStructure(DiagonalizableGroupDescriptor(0, (2,)), 1)
        return FiberDescriptor(s, st, "degenerate")
    st = FiberStructure(DiagonalizableGroupDescriptor(1, ()), 0)
    return FiberDescriptor(s, st, "split" if s > 0 else "compact")


def trivialize(u: RankOneElement, t):
    """Eigenvalue ``x = a + t b``; needs ``t^2 = s`` exactly."""
    if t * t != u.s:
        raise BadRoot(f"{t}^2 != {u.s}")
    return u.a + t * u.b


def real_form_psi(u: RankOneElement):
    """Rotation matrix [[a, -r b], [r b, a]] with ``r = sqrt(-s)``."""
    if u.s > 0:
        raise PositiveS(f"s = {u.s} > 0 is off the real locus")
    r = exact_sqrt(-u.s)
    return [[u.a, -(r * u.b)], [r * u.b, u.a]]


def mat2_mul(X, Y):
    return [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]


def mat2_det(X):
    return X[0][0] * X[1][1] - X[0][1] * X[1][0]


# ---------------------------------------------------------------------------
# polynomial exterior algebra in a, b, s

VARS = ("a", "b", "s")


def _padd(p, q, sign=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, Fraction(0)) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _pmul(p, q):
    out = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, Fraction(0)) + v1 * v2
            if out[k] == 0:
                del out[k]
    return out


def _pdiff(p, i):
    out = {}
    for k, v in p.items():
        if k[i]:
            k2 = list(k)
            k2[i] -= 1
            out[tuple(k2)] = out.get(tuple(k2), Fraction(0)) + v * k[i]
    return {k: v for k, v in out.items() if v != 0}


def poly(terms: dict) -> dict:
    """``{(ea, eb, es): coefficient}``."""
    return {tuple(k): Fraction(v) for k, v in terms.items() if v != 0}


def _merge_sign(I, J):
    """Sign and sorted index tuple of dx_I ^ dx_J (0 if they overlap)."""
    if set(I) & set(J):
        return 0, ()
    seq = list(I) + list(J)
    sign = 1
    for i in range(len(seq)):  # count inversions
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


class Poly3Form:
    """Differential form ``sum_I p_I dx_I`` with ``I`` an increasing tuple
    of indices into (a, b, s)."""

    def __init__(self, terms=None):
        self.terms = {}
        for I, p in (terms or {}).items():
            p = {k: v for k, v in p.items() if v != 0}
            if p:
                self.terms[tuple(I)] = p

    @classmethod
    def function(cls, p):
        return cls({(): p})

    @classmethod
    def d_var(cls, i: int):
        return cls({(i,): {(0, 0, 0): Fraction(1)}})

    def __add__(self, other):
        out = dict(self.terms)
        for I, p in other.terms.items():
            out[I] = _padd(out.get(I, {}), p)
        return Poly3Form(out)

    def __sub__(self, other):
        return self + other.scale({(0, 0, 0): Fraction(-1)})

    def scale(self, p):
        return Poly3Form({I: _pmul(q, p) for I, q in self.terms.items()})

    def wedge(self, other):
        out = {}
        for I, p in self.terms.items():
            for J, q in other.terms.items():
                sign, K = _merge_sign(I, J)
                if sign:
                    out[K] = _padd(out.get(K, {}), _pmul(p, q), sign)
        return Poly3Form(out)

    __xor__ = wedge

    def d(self):
        out = Poly3Form()
        for I, p in self.terms.items():
            for i in range(3):
                dp = _pdiff(p, i)
                if dp:
                    out = out + Poly3Form({(i,): dp}).wedge(Poly3Form({I: {(0, 0, 0): Fraction(1)}}))
        return out

    def degree_parts(self):
        return sorted({len(I) for I in self.terms})

    def __eq__(self, other):
        return isinstance(other, Poly3Form) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"Poly3Form({self.terms})"


A, B, S = (poly({(1, 0, 0): 1}), poly({(0, 1, 0): 1}), poly({(0, 0, 1): 1}))
ONE = poly({(0, 0, 0): 1})
DA, DB, DS = (Poly3Form.d_var(i) for i in range(3))


def defining_function():
    """``f = a^2 - s b^2 - 1``."""
    return poly({(2, 0, 0): 1, (0, 2, 1): -1, (0, 0, 0): -1})


def omega_tilde(coefficient=Fraction(1, 2)) -> Poly3Form:
    """``c (a db - b da) ^ ds``."""
    one_form = DB.scale(A) - DA.scale(B)
    return one_form.wedge(DS).scale(poly({(0, 0, 0): coefficient}))


@dataclass(frozen=True)
class IdentityReport:
    ok: bool
    mismatch: tuple  # (basis index tuple, lhs coefficient, rhs coefficient) or ()
    cancellation_ok: bool


def symplectic_identity_check(coefficient=Fraction(1, 2)) -> IdentityReport:
    """Check ``omega~ ^ df = (f + 1) da ^ db ^ ds`` and the vanishing of
    ``(a da - s b db) ^ ds`` modulo ``df``."""
    f = defining_function()
    df = Poly3Form.function(f).d()
    lhs = omega_tilde(coefficient).wedge(df)
    rhs = DA.wedge(DB).wedge(DS).scale(_padd(f, ONE))
    mismatch = ()
    if lhs != rhs:
        for I in sorted(set(lhs.terms) | set(rhs.terms)):
            if lhs.terms.get(I, {}) != rhs.terms.get(I, {}):
                mismatch = (I, lhs.terms.get(I, {}), rhs.terms.get(I, {}))
                break
    first = DA.scale(A) - DB.scale(_pmul(S, B))
    half_df = df.scale(poly({(0, 0, 0): Fraction(1, 2)}))
    cancel = (first - half_df).wedge(DS).is_zero()
    return IdentityReport(lhs == rhs, mismatch, cancel)


# ---------------------------------------------------------------------------
# rank-one sections over the s-line

class RatFunc:
    """Rational function of ``s``: coefficient lists, constant term first."""

    def __init__(self, num, den=(1,)):
        self.num = _trim([Fraction(x) for x in num])
        self.den = _trim([Fraction(x) for x in den])
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    def __mul__(self, other):
        return RatFunc(_lmul(self.num, other.num), _lmul(self.den, other.den))

    def __sub__(self, other):
        return RatFunc(_ladd(_lmul(self.num, other.den), _lmul(other.num, self.den), -1),
                       _lmul(self.den, other.den))

    def derivative(self):
        # (n/d)' = (n' d - n d') / d^2
        n, d = self.num, self.den
        return RatFunc(_ladd(_lmul(_lder(n), d), _lmul(n, _lder(d)), -1), _lmul(d, d))

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        return _lmul(self.num, other.den) == _lmul(other.num, self.den)


def _trim(c):
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def _lmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return _trim(out)


def _ladd(p, q, sign=1):
    n = max(len(p), len(q))
    p = p + [Fraction(0)] * (n - len(p))
    q = q + [Fraction(0)] * (n - len(q))
    return _trim([x + sign * y for x, y in zip(p, q)])


def _lder(p):
    return _trim([i * p[i] for i in range(1, len(p))])


@dataclass(frozen=True)
class SectionReport:
    on_scheme: bool
    one_form: RatFunc  # coefficient of ds in the pullback of (a db - b da)/2
    lagrangian: bool


def lagrangian_section_check(a: RatFunc, b: RatFunc) -> SectionReport:
    """Pull back ``(a db - b da)/2`` along ``s -> (a(s), b(s), s)``.

    The result is a 1-form in the single variable ``s`` and hence closed,
    so every section of the rank-one scheme is Lagrangian."""
    s = RatFunc([0, 1])
    on = (a * a - s * b * b) == RatFunc([1])
    if not on:
        raise InputError("section does not satisfy a^2 - s b^2 = 1")
    coeff = (a * b.derivative() - b * a.derivative()) * RatFunc([Fraction(1, 2)])
    # d(c(s) ds) = c'(s) ds ^ ds = 0
    return SectionReport(on, coeff, True)
