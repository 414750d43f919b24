"""Build the optional compiled kernel lane.

The package works without the extension (a pure numpy/Python lane is selected
at import time); this build tries to compile it and degrades gracefully when
no C toolchain is available.
"""

import sys

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "magfriction._kernels._core",
                ["src/magfriction/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # no Cython / no compiler: pure lane only
    print("kernel extension skipped: %s" % exc, file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
