"""Exact two-phase simplex over the rationals (Bland's rule).

Problems are tiny here (a handful of variables and constraints), so a
dense Fraction tableau is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: tuple | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(T, r, c):
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]


def _run(T, basis, allowed):
    """Minimize the objective stored in the last row; Bland's rule."""
    m = len(T) - 1
    while True:
        obj = T[m]
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter


def _standard_form(c, A, b):
    """min c.z s.t. A z = b, z >= 0."""
    m, n = len(A), len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # phase 1 with artificials in columns n..n+m-1
    T = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    T.append([-sum((A[i][j] for i in range(m)), Fraction(0)) for j in range(n)]
             + [Fraction(0)] * m + [-sum(b, Fraction(0))])
    basis = list(range(n, n + m))
    _run(T, basis, range(n))
    if T[m][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, j)
            basis[i] = j
        i += 1
    m = len(basis)
    T = [row[:n] + [row[-1]] for row in T[:m]]
    cost = [Fraction(x) for x in c]
    obj = [cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(m)), Fraction(0)) for j in range(n)]
    obj.append(-sum((cost[basis[i]] * T[i][-1] for i in range(m)), Fraction(0)))
    T.append(obj)
    if _run(T, basis, range(n)) == "unbounded":
        return LPResult("unbounded")
    z = [Fraction(0)] * n
    for i, j in enumerate(basis):
        z[j] = T[i][-1]
    return LPResult("optimal", sum((cost[j] * z[j] for j in range(n)), Fraction(0)), tuple(z))


def minimize(c: Sequence, ineqs: Sequence = (), eqs: Sequence = (), dim: int | None = None) -> LPResult:
    """Minimize ``c.x`` over free ``x`` with ``a.x >= b`` for ``(a, b)`` in
    ``ineqs`` and ``a.x == b`` for ``(a, b)`` in ``eqs``."""
    n = len(c) if dim is None else dim
    k = len(ineqs)
    # x = p - q, slack s: a.(p - q) - s = b
    A, rhs = [], []
    for t, (a, b) in enumerate(ineqs):
        A.append(list(a) + [-x for x in a] + [-int(t == u) for u in range(k)])
        rhs.append(b)
    for a, b in eqs:
        A.append(list(a) + [-x for x in a] + [0] * k)
        rhs.append(b)
    cost = list(c) + [-x for x in c] + [0] * k
    if not A:
        if any(x != 0 for x in c):
            return LPResult("unbounded")
        return LPResult("optimal", Fraction(0), tuple(Fraction(0) for _ in range(n)))
    res = _standard_form(cost, A, rhs)
    if res.status != "optimal":
        return res
    z = res.x
    x = tuple(z[j] - z[n + j] for j in range(n))
    return LPResult("optimal", res.value, x)


def feasible_point(ineqs: Sequence, eqs: Sequence = (), dim: int | None = None):
    """A rational point of the system, or ``None`` if it is empty."""
    n = dim if dim is not None else len((list(ineqs) + list(eqs))[0][0])
    res = minimize([0] * n, ineqs, eqs, n)
    return res.x if res.status == "optimal" else None
