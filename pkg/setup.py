"""Build script for the compiled partition-search kernel.

The extension is optional: if Cython or a C compiler is missing the
package installs anyway and falls back to the pure-Python kernel.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("faircc._kernels._search", ["src/faircc/_kernels/_search.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
