import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# no -ffast-math: exact cancellation in the well-balanced fluxes relies on IEEE semantics
extensions = [
    Extension(
        "relaxeuler._core",
        ["src/relaxeuler/_core.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
