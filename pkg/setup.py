"""Build hook: compiles the optional Cython kernel when Cython is available.

A plain install without Cython (or without a C compiler) still works; the
package falls back to the numpy kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/twistcheck/_kernels/_speedups.pyx"],
        language_level=3,
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.name = "twistcheck._speedups"
except ImportError:
    pass

setup(ext_modules=ext_modules)
