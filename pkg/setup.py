"""Build script: compiles the optional term-arithmetic speedup extension.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so the build is marked optional and
any compiler failure degrades gracefully."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("QKCOMP_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "qkcomp._speedups",
                    ["src/qkcomp/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
