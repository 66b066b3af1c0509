from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; rwattach.core falls back to _pycore
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("rwattach._core", ["src/rwattach/_core.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
