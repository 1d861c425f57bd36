"""Build script: compiles the optional Cython kernel extension.

The extension is optional -- if the compiler or Cython is unavailable the
package installs anyway and falls back to the pure-Python kernels at import
time (see asrlab._kernels).
"""

import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping compiled kernels ({exc}); "
                  "asrlab will use the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: could not compile {ext.name} ({exc}); "
                  "asrlab will use the pure-Python fallback")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "asrlab._kernels._ckernels",
                ["src/asrlab/_kernels/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:  # pragma: no cover - cython missing
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
