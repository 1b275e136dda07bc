"""Build script: compiles the mod-p kernel extension when Cython is available.

The package works without the extension (a pure-numpy fallback is selected at
import time), so a missing compiler or Cython only costs speed, not features.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "agecmpc._kernels._fast",
                ["src/agecmpc/_kernels/_fast.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
