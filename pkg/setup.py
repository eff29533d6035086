"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (pcmtes.correlations falls back to
the pure-Python kernels); set PCMTES_PURE_PYTHON=1 to skip the build.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PCMTES_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "pcmtes._kernels",
                    ["src/pcmtes/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
