"""Build script for the optional compiled kernels.

The package works without them: if Cython or a C compiler is missing the
extension is skipped and ``qprlab.kernels`` falls back to numpy.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("QPRLAB_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "qprlab._kernels",
                    ["src/qprlab/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"qprlab: building without compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
