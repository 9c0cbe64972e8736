"""Build script: compiles the optional kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import); set QMATROIDS_NO_EXT=1 to skip compilation, e.g.
on platforms without a C toolchain.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("QMATROIDS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/qmatroids/kernels/_fast.pyx"],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
