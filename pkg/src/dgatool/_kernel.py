"""Select the elimination backend at import time.

The compiled extension is used when it was built; set ``DGATOOL_PURE=1`` to
force the pure-Python fallback.
"""
import os

BACKEND = "python"

if os.environ.get("DGATOOL_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._echelon import echelon  # noqa: F401
        BACKEND = "cython"
    except ImportError:
        from ._echelon_py import echelon  # noqa: F401
else:
    from ._echelon_py import echelon  # noqa: F401
