import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TDAKIT_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "tdakit._kernels",
                    ["src/tdakit/_kernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++14"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: install the pure-Python package, kernels fall back at import.
        ext_modules = []

setup(ext_modules=ext_modules)
