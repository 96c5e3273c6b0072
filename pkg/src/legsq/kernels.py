"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise the pure-Python
module is loaded. Set ``LEGSQ_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if not os.environ.get("LEGSQ_PURE_PYTHON"):
    try:
        from ._ckernels import apery_like_table, convolve  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import apery_like_table, convolve  # noqa: F401

__all__ = ["BACKEND", "apery_like_table", "convolve"]
