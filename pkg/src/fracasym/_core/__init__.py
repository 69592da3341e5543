"""Backend selection for the O(N^2) convolution kernels.

The compiled Cython kernels are preferred when the extension built; the
numpy implementation is the fallback and the reference.  Set
FRACASYM_PURE_PYTHON=1 to force the fallback (used by the benchmark and by
the backend-equivalence tests).
"""

import os

from . import _kernels_py

if os.environ.get("FRACASYM_PURE_PYTHON"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _compiled

        kernels = _compiled
        BACKEND = "compiled"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return BACKEND
