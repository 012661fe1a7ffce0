import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("RAMSEY_SENDERS_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("ramsey_senders._ckernel", ["src/ramsey_senders/_ckernel.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
