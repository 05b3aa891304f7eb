"""Builds the pybind11 extension from the same sources the CMake build uses."""

from pathlib import Path

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = sorted(p.as_posix() for p in Path("src").glob("*.cpp"))
sources.append("bindings/python_module.cpp")

setup(
    ext_modules=[
        Pybind11Extension(
            "ranksync._ranksync",
            sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
