"""Optional Cython build of the exact-arithmetic kernels.

Without Cython or a C compiler the package installs pure Python and
ncg.exactalg.kernels falls back to _kernels_py at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("NCG_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/ncg/exactalg/_kernels.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
