"""Build script: compiles the optional Monte-Carlo sampling kernel.

The package is fully functional without the extension; `toricfutaki.mckernel`
falls back to the pure-Python kernel when the compiled one is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "toricfutaki._mc_cy",
                ["src/toricfutaki/_mc_cy.pyx"],
                # no FP contraction: the compiled kernel must make bitwise
                # the same accept/reject decisions as the pure-Python one
                extra_compile_args=["-O2", "-ffp-contract=off"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
