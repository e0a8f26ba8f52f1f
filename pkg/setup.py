import sys

from setuptools import setup, Extension

# The compiled kernel is optional.  If Cython or a C compiler is missing the
# package still installs and falls back to the pure-Python search kernel.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tropcount._kernel._speedups",
                ["src/tropcount/_kernel/_speedups.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    sys.stderr.write("Cython not available, building without the compiled kernel\n")

setup(ext_modules=ext_modules)
