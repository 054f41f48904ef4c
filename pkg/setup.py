import os

from setuptools import setup

ext_modules = []
if os.environ.get("ALBA_PURE_ONLY") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/alba/kernels/_speedups.pyx"], language_level="3"
        )
    except ImportError:
        # No Cython available: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
