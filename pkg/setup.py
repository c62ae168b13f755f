import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("H2M_NO_EXTENSION", "") not in ("1", "true", "yes"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "h2m._ckernels",
                    ["src/h2m/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
