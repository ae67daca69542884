"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension; nodalgaps.kernels
falls back to the pure-Python implementation at import time.  Set
NODALGAPS_NO_EXT=1 to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NODALGAPS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "nodalgaps._kernels_cy",
            ["src/nodalgaps/_kernels_cy.pyx"],
            optional=True,
        )
        ext_modules = cythonize([ext], language_level="3")
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
