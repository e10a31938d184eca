"""Build the optional compiled kernel; the package works without it."""

import os
import platform
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("JAFFINE_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        compile_args = ["-O3"]
        link_args = []
        if platform.machine().lower() in ("x86_64", "amd64"):
            compile_args.append("-mpopcnt")
        if sys.platform.startswith("linux") and os.environ.get("JAFFINE_NO_OPENMP") != "1":
            compile_args.append("-fopenmp")
            link_args.append("-fopenmp")
        ext_modules = cythonize(
            [
                Extension(
                    "jaffine._ckernel",
                    ["src/jaffine/_ckernel.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=compile_args,
                    extra_link_args=link_args,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
