import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DIB_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/dibchrom/_search.pyx"],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
