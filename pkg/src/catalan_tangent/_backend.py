"""Select the compiled kernels when available, else the pure-Python ones.

Set ``CATALAN_TANGENT_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("CATALAN_TANGENT_PURE"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
