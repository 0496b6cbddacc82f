"""Build script for the optional compiled sieve kernel.

The package is importable without the extension: gapforge.kernels falls back
to the pure-Python implementation when gapforge._sievecore is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gapforge._sievecore",
                ["src/gapforge/_sievecore.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
