#!/usr/bin/env python3
"""
Setup script for adiasweep.
"""
from setuptools import find_packages, setup

setup(
    name="adiasweep",
    packages=find_packages(include=["adiasweep*"], exclude=["adiasweep.tests*"]),
    py_modules=["main"],
    entry_points={
        "console_scripts": [
            "adiasweep=main:main",
            "adiabatic-sweep=main:main",
        ],
    },
)
