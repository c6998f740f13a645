"""Build hook for the optional compiled kernels.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any failure here downgrades to a pure build
instead of aborting the install.
"""

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            [Extension("ppcount._kernels", ["src/ppcount/_kernels.pyx"])],
            language_level="3",
        )
    except Exception:
        return []


setup(ext_modules=extensions())
