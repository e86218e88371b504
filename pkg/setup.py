import os

from setuptools import Extension, setup

ext_modules = []
try:
    import gmpy2
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [
            Extension(
                "recenters._kernels._ckernels",
                ["src/recenters/_kernels/_ckernels.pyx"],
                include_dirs=[os.path.dirname(gmpy2.__file__)],
                libraries=["gmp"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
