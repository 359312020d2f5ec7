"""Build script. The compiled kernel module is optional: if Cython or a C
compiler is unavailable the package installs pure Python and selects the
fallback kernels at import time.

Build the extension in place for development with:

    python setup.py build_ext --inplace
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Swallow extension build failures; the package works without them."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            print(f"specconvex: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"specconvex: skipping {ext.name} ({exc})")


ext_modules = []
if not os.environ.get("SPECCONVEX_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "specconvex._core",
                    ["src/specconvex/_core.pyx"],
                    # -ffp-contract=off: the pure-Python twin must produce
                    # identical bits, so FMA contraction is disabled.
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        print("specconvex: Cython not available, installing pure Python")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
