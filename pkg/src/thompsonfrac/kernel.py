"""Backend selection for the prefix-replacement kernels.

The compiled extension is used when it imports and ``THOMPSONFRAC_PURE`` is
unset; otherwise the pure-Python twin.  Both expose ``compose_reduce`` and
``reduce_pairs`` with identical results.  Tables with very long words fall
back to Python per call.
"""

import os

from . import _vkernel_py

try:
    if os.environ.get("THOMPSONFRAC_PURE"):
        raise ImportError("pure backend forced")
    from . import _vkernel as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


if _compiled is not None:

    def compose_reduce(outer, inner):
        try:
            return _compiled.compose_reduce(outer, inner)
        except OverflowError:
            return _vkernel_py.compose_reduce(outer, inner)

    def reduce_pairs(pairs):
        try:
            return _compiled.reduce_pairs(pairs)
        except OverflowError:
            return _vkernel_py.reduce_pairs(pairs)

else:
    compose_reduce = _vkernel_py.compose_reduce
    reduce_pairs = _vkernel_py.reduce_pairs
