"""Build script: compiles the optional Cython kernel extension.

Set ERASIM_SKIP_EXT=1 to install without the compiled kernels; the package
then falls back to the pure-Python implementations at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ERASIM_SKIP_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("erasim._kernels._corecy", ["src/erasim/_kernels/_corecy.pyx"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
