"""Build hook: compiles the enumeration kernel when Cython and a C++
toolchain are available; the package falls back to the pure-Python
enumerator otherwise."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "gatesimp._kernels",
                ["src/gatesimp/_kernels.pyx"],
                language="c++",
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
