"""Builds the optional compiled Monte Carlo kernel.

Without Cython or a C compiler the package still installs and falls back to
the numpy implementation in ``qcomb.biqkd._tally_py``.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("qcomb.biqkd._tally", ["src/qcomb/biqkd/_tally.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
