"""Backend selection for the hot kernels.

The compiled module is used when it was built and imports cleanly;
setting ``MULTFREE_PURE_PYTHON=1`` forces the Python fallback.
"""

import os

from . import _purepy

BACKEND = "python"
_compiled = None

if not os.environ.get("MULTFREE_PURE_PYTHON"):
    try:
        from . import _speedups as _compiled
        BACKEND = "cython"
    except ImportError:  # extension not built
        _compiled = None


def weyl_closure(generators, n, guard):
    gens = [tuple(int(x) for x in g) for g in generators]
    if _compiled is not None:
        try:
            return _compiled.weyl_closure(gens, n, guard)
        except _compiled.KernelOverflow:
            pass
    return _purepy.weyl_closure(gens, n, guard)
