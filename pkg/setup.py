"""Builds the optional compiled ROC-sweep kernel.

If Cython (or a C compiler) is unavailable the build proceeds without the
extension and the package falls back to the pure-Python kernel at import.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "cxrtriage._kernels._roc_sweep",
                sources=["src/cxrtriage/_kernels/_roc_sweep.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
