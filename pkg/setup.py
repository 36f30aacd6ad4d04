"""Build hook for the optional compiled kernel.

If Cython or a C compiler is unavailable the package still installs and
falls back to the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ghbounds/_ckernels.pyx"],
        compiler_directives={"language_level": 3},
        quiet=True,
    )
except Exception as exc:  # pragma: no cover - depends on the build host
    print(f"ghbounds: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules)
