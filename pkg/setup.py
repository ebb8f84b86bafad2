"""Build the optional Cython path kernels.

Without Cython or a C compiler the package installs anyway and
``cone_exit.mc`` falls back to the numpy kernels.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("CONE_EXIT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "cone_exit._kernels",
                    ["src/cone_exit/_kernels.pyx"],
                    # no FMA contraction and no sin+cos -> sincos fusion: the scalar reference
                    # in mc calls libm sin and cos separately and must agree bit for bit
                    extra_compile_args=["-O2", "-ffp-contract=off", "-fno-builtin-sin", "-fno-builtin-cos"],
                    libraries=["m"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
