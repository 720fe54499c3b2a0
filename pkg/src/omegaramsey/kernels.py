"""Backend selection for the profile kernels.

The compiled extension is used when it was built; set
``OMEGARAMSEY_PURE=1`` to force the pure-Python fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("OMEGARAMSEY_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

mul = _impl.mul
linked_accepts = _impl.linked_accepts

__all__ = ["BACKEND", "mul", "linked_accepts"]
