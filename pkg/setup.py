"""Build script: compiles the optional speedup extension when Cython is present.

The package works without the extension (a pure-Python fallback is selected
at import time), so any build failure here is non-fatal by design: delete the
ext_modules line or build without Cython and you still get a working install.
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
                "gf2sat._speedups",
                ["src/gf2sat/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
