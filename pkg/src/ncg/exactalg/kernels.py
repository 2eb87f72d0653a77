"""Select the compiled kernels when built, else the pure-Python ones.

Set ``NCG_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("NCG_PURE_PYTHON") != "1":
    try:
        from ._kernels import int_rref, poly_mul  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from ._kernels_py import int_rref, poly_mul
else:
    from ._kernels_py import int_rref, poly_mul

__all__ = ["BACKEND", "int_rref", "poly_mul"]
