"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python kernel backend is
selected at import time), so a failed compile only costs speed.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/klcells/_kernels/_speedups.pyx"],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write(f"warning: Cython kernels not built ({exc}); "
                     "falling back to pure-Python kernels\n")

setup(ext_modules=ext_modules)
