"""Build script: compiles the optional speedup extension when Cython is
available; a plain install without Cython stays pure Python and the
package selects the interpreter fallback at import time."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("holtorus._speedups", ["src/holtorus/_speedups.pyx"],
                   optional=True)],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
