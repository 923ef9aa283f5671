from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("emclab._kernel", sources=["src/emclab/_kernel.pyx"])],
        compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
    )
except ImportError:
    # pure-Python fallback is selected at import time, so building without
    # Cython is fine
    ext_modules = []

setup(ext_modules=ext_modules)
