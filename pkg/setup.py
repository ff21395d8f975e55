"""Builds the optional compiled link-search kernel; the package works without it."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("qhverma._ext._linkcore", ["src/qhverma/_ext/_linkcore.pyx"],
                   language="c++", extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
