import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the fallback kernels are used
    cythonize = None

ext_modules = []
if cythonize is not None:
    try:
        ext_modules = cythonize(
            [
                Extension(
                    "lefdt._kernels._ckernels",
                    ["src/lefdt/_kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # noqa: BLE001 - fall back to pure Python
        print(f"warning: compiled kernels disabled ({exc})")

setup(ext_modules=ext_modules)
