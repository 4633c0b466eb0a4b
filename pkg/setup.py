"""Build script: compiles the optional Cython sweep kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a missing Cython or C compiler only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hankelrkt._kernels._sweeps_cy",
                ["src/hankelrkt/_kernels/_sweeps_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
