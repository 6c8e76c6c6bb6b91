"""Build hook for the optional compiled kernels.

The extension is skipped (and the pure-Python kernels used) when Cython or a
C compiler is unavailable, when compilation fails, or when CFENTROPY_NO_EXT
is set.
"""
import os
import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any failure means "use the fallback"
            warnings.warn(f"compiled kernels not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            warnings.warn(f"compiled kernels not built ({exc}); using pure Python")


ext_modules = []
if not os.environ.get("CFENTROPY_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("cfentropy._kernels", ["src/cfentropy/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # noqa: BLE001
        warnings.warn(f"Cython unavailable or failed ({exc}); using pure Python")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
