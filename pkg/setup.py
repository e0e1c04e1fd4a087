"""Build script for the compiled relaxation kernel.

The pure-Python twin in ``mechpay._bf_py`` is always available; this
extension is a drop-in replacement selected at import time.
"""

from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "mechpay._bf",
        ["src/mechpay/_bf.pyx"],
        # -O3 only: fast-math would break the bit-for-bit agreement with
        # the pure-Python twin that the test suite asserts.
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
