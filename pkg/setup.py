"""Build hook for the optional compiled kernel.

The package is pure Python and works without this extension; when Cython and
a C compiler are available the hot loops (banded products, closures) get a
compiled implementation that the kernel dispatcher picks up at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension("veribv._kernel._corec", ["src/veribv/_kernel/_corec.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
