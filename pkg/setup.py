from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # the package works on the pure-Python kernel lane without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("gpue._kernels", ["src/gpue/_kernels.pyx"])],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
