from setuptools import setup

# The compiled kernel is optional: the package falls back to the pure-Python
# backend in copfaces._kernels.pure when the extension is unavailable.
ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "copfaces._kernels._speedups",
                ["src/copfaces/_kernels/_speedups.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
