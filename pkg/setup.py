"""Build script for the compiled kernel extension.

The extension is optional: set DIFFLAT_SKIP_EXT=1 (or build without Cython)
to install the pure-numpy fallback only.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DIFFLAT_SKIP_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "difflat._kernels",
                    ["src/difflat/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3", "-fopenmp"],
                    extra_link_args=["-fopenmp"],
                )
            ],
            language_level=3,
            compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
