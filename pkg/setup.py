"""Build script for the compiled kernel extension.

The extension is optional: if no C toolchain (or Cython) is available the
install still succeeds and the package runs on the pure-Python kernel twin.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: compiled kernels skipped ({exc}); pure backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); pure backend will be used")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "shufflelab._kernels._fast",
        ["src/shufflelab/_kernels/_fast.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize(ext, language_level=3)


setup(
    package_dir={"": "src"},
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
