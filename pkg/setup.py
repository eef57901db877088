"""Build script: compiles the optional exact-elimination kernel.

The package is pure Python except for quivergeom._rowred, a Cython
translation of quivergeom._rowred_py. If Cython or a C compiler is
missing the extension is skipped and the pure kernel is used instead.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext = Extension(
        "quivergeom._rowred",
        sources=["src/quivergeom/_rowred.pyx"],
        optional=True,
    )
    ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})
except ImportError:
    pass

setup(ext_modules=ext_modules)
