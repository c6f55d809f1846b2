import os

from setuptools import Extension, setup

# The compiled kernel is an optimization, not a requirement: set
# COALDEF_PURE_ONLY=1 to install without it (the package falls back to
# coaldef._kernels_py at import time).
ext_modules = []
if not os.environ.get("COALDEF_PURE_ONLY"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("coaldef._kernels", ["src/coaldef/_kernels.pyx"])],
            language_level="3",
        )

setup(ext_modules=ext_modules)
