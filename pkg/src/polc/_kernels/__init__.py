"""Hot kernels: compiled Cython core with a pure-Python fallback.

The compiled module is used when it was built and ``POLC_PURE_PYTHON`` is
not set to ``1``.  ``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and os.environ.get("POLC_PURE_PYTHON") != "1":
    _impl = _ckernels
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"

enumerate_transformations = _impl.enumerate_transformations
fill_table = _impl.fill_table
order_from_transforms = _impl.order_from_transforms
order_by_definition = _impl.order_by_definition
transitive_closure = _impl.transitive_closure
forest_levels = _impl.forest_levels


def backends():
    """Available implementations, keyed by name."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out
