import os

from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure-Python
# implementation at import time. Set MEANINGBOUND_NO_EXTENSION=1 to skip the
# Cython build entirely (e.g. on hosts without a C toolchain).
ext_modules = []
if not os.environ.get("MEANINGBOUND_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "meaningbound._kernels._native",
                    ["src/meaningbound/_kernels/_native.pyx"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
