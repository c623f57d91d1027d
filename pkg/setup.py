"""Build hook for the optional compiled elimination kernel.

The package is pure Python plus one Cython extension for the elimination
hot loop.  If Cython or a C compiler is unavailable the build degrades to
pure Python; kernel selection happens at import time in mc2reduce.kernels.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/mc2reduce/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.optional = True  # a failed compile must not fail the install
except ImportError:
    pass

setup(ext_modules=ext_modules)
