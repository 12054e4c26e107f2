"""Build script for the compiled point-source kernel core.

The extension is optional at runtime: harmint.backend falls back to the
pure-NumPy implementation when the compiled module is absent.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "harmint._fastkern",
        sources=["src/harmint/_fastkern.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
