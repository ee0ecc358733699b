import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "torsionlab._kernels._cutcells",
                ["src/torsionlab/_kernels/_cutcells.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-python kernel is selected at import time when the compiled
    # extension is unavailable.
    extensions = []

setup(ext_modules=extensions)
