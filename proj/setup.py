"""Extension build for the amspricer wheel.

The package metadata lives in pyproject.toml; this file only compiles the
C++ core plus the binding translation unit into amspricer._core.  The
CMake build remains the primary path for the CLI and the test suite.
"""

from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "amspricer._core",
    sources=sorted(glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-O3"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
