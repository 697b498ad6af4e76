"""Optional compiled-kernel build: python setup.py build_ext --inplace.

The package runs on the pure-Python kernel without this; the extension
just makes the closure/class loops fast (see benchmarks/bench_kernel.py).
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [Extension("chartower._kernel_c", ["src/chartower/_kernel_c.pyx"],
                   include_dirs=[numpy.get_include()],
                   define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
