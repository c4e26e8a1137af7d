"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``_speedups.pyx`` must return
exactly the same values in exactly the same order.
"""

from .errors import GuardExceeded


def _mul(g, s, n):
    return tuple(
        sum(g[i * n + l] * s[l * n + j] for l in range(n))
        for i in range(n)
        for j in range(n)
    )


def weyl_closure(generators, n, guard):
    """Breadth-first closure of a set of ``n x n`` integer matrices.

    Matrices are flat row-major tuples.  Returns the element list in BFS
    order (identity first, new elements found as ``g * s`` for queue
    element ``g`` and generator ``s`` in order) and the BFS depth of each.
    """
    ident = tuple(int(i == j) for i in range(n) for j in range(n))
    seen = {ident}
    elements = [ident]
    depth = [0]
    head = 0
    while head < len(elements):
        g = elements[head]
        d = depth[head] + 1
        for s in generators:
            h = _mul(g, s, n)
            if h not in seen:
                if len(elements) >= guard:
                    raise GuardExceeded(f"group closure exceeded {guard} elements")
                seen.add(h)
                elements.append(h)
                depth.append(d)
        head += 1
    return elements, depth
