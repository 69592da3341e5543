"""Build script: compiles the convolution kernels when Cython is available.

The package works without the extension (a numpy fallback is selected at
import time), so the build degrades gracefully on toolchain-less hosts.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "fracasym._core._kernels",
                ["src/fracasym/_core/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
