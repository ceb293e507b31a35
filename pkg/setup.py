from setuptools import Extension, setup

# The compiled determinant core is optional: if Cython (or a C compiler) is
# unavailable the package falls back to the pure-Python kernels at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mpow._detcore",
                ["src/mpow/_detcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
