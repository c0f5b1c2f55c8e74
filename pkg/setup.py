from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("lengthsets._kernel_c", ["src/lengthsets/_kernel_c.pyx"])],
        language_level=3,
    )
else:
    # no Cython toolchain: install pure-Python only, kernel dispatch falls back
    ext_modules = []

setup(ext_modules=ext_modules)
