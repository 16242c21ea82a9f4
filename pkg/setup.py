#!/usr/bin/env python3
"""Setup script for bushyforce."""

from pathlib import Path

from setuptools import find_packages, setup

here = Path(__file__).parent.resolve()
readme = here / "README.md"
long_description = readme.read_text(encoding="utf-8") if readme.exists() else ""

setup(
    name="bushyforce",
    version="0.1.0",
    description="Bigness calculus, bad-set forcings and their density engine",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="bushyforce Team",
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="forcing, set theory, laver, hechler, schnorr, trees",
    packages=find_packages(exclude=["tests", "tests.*", "docs"]),
    python_requires=">=3.9",
    install_requires=[],
    extras_require={
        "dev": [
            "pytest>=7.0",
            "pytest-cov>=4.0",
            "pytest-mock>=3.10",
            "hypothesis>=6.0",
            "black>=23.0",
            "isort>=5.12",
            "mypy>=1.0",
            "flake8>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "bushyforce=bushyforce.cli:main",
        ],
    },
)
