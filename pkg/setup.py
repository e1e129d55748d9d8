"""Build script for the optional compiled value-iteration kernel.

The package works without the extension (a pure-Python sweep kernel is
selected at import time), so the build is marked optional and a failed
compile only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - cython is a build requirement
    cythonize = None

extensions = []
if cythonize is not None:
    ext = Extension(
        "ptgsolve.solver._sweep",
        ["src/ptgsolve/solver/_sweep.pyx"],
        extra_compile_args=["-O2"],
    )
    ext.optional = True
    extensions = cythonize(
        [ext],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
