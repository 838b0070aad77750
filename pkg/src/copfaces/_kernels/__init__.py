"""Kernel backend selection: compiled extension when available, else pure Python.

Set ``COPFACES_PURE=1`` to force the pure backend even when the compiled one
is installed.  Both backends implement identical pivot rules, so every result
is bit-for-bit independent of the selection.
"""

import os

from . import pure

rref = pure.rref
simplex_core = pure.simplex_core
BACKEND = "pure"

if not os.environ.get("COPFACES_PURE"):
    try:
        from . import _speedups

        rref = _speedups.rref
        simplex_core = _speedups.simplex_core
        BACKEND = "compiled"
    except ImportError:
        pass
