# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled group-closure kernel.  Mirrors ``_purepy.weyl_closure``."""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy
from cpython.bytes cimport PyBytes_FromStringAndSize

from multfree.errors import GuardExceeded


class KernelOverflow(OverflowError):
    """Entries left the safe int64 range; the caller falls back to Python."""


cdef long long LIMIT = 1LL << 40


def weyl_closure(list generators, int n, Py_ssize_t guard):
    cdef Py_ssize_t nn = n * n
    cdef Py_ssize_t k = len(generators)
    cdef Py_ssize_t cap = 256, count = 0, head = 0
    cdef Py_ssize_t i, j, l, g, t, e
    cdef long long acc, x
    cdef long long *gens = <long long *> malloc((k * nn + 1) * sizeof(long long))
    cdef long long *els = <long long *> malloc((cap * nn + 1) * sizeof(long long))
    cdef long long *tmp = <long long *> malloc((nn + 1) * sizeof(long long))
    cdef long long *row
    cdef long long *grow
    cdef long long *newbuf
    cdef dict seen = {}
    cdef list depth = []
    if gens == NULL or els == NULL or tmp == NULL:
        free(gens); free(els); free(tmp)
        raise MemoryError()
    try:
        for g in range(k):
            gen = generators[g]
            if len(gen) != nn:
                raise ValueError("generator has wrong size")
            for t in range(nn):
                x = gen[t]
                if x > LIMIT or x < -LIMIT:
                    raise KernelOverflow()
                gens[g * nn + t] = x
        for i in range(n):
            for j in range(n):
                els[i * n + j] = 1 if i == j else 0
        seen[PyBytes_FromStringAndSize(<char *> els, nn * sizeof(long long))] = 0
        depth.append(0)
        count = 1
        while head < count:
            for g in range(k):
                row = els + head * nn
                grow = gens + g * nn
                for i in range(n):
                    for j in range(n):
                        acc = 0
                        for l in range(n):
                            acc += row[i * n + l] * grow[l * n + j]
                        if acc > LIMIT or acc < -LIMIT:
                            raise KernelOverflow()
                        tmp[i * n + j] = acc
                key = PyBytes_FromStringAndSize(<char *> tmp, nn * sizeof(long long))
                if key in seen:
                    continue
                if count >= guard:
                    raise GuardExceeded(f"group closure exceeded {guard} elements")
                if count == cap:
                    cap *= 2
                    newbuf = <long long *> realloc(els, (cap * nn + 1) * sizeof(long long))
                    if newbuf == NULL:
                        raise MemoryError()
                    els = newbuf
                memcpy(els + count * nn, tmp, nn * sizeof(long long))
                seen[key] = count
                depth.append(depth[head] + 1)
                count += 1
            head += 1
        result = [tuple([els[e * nn + t] for t in range(nn)]) for e in range(count)]
    finally:
        free(gens)
        free(els)
        free(tmp)
    return result, depth
