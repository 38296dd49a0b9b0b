"""Setup configuration for zero-shot information extraction pipelines."""

from setuptools import setup, find_packages

setup(
    name="zeroshot-ie",
    version="0.1.0",
    description="Zero-shot entity and relation extraction from class descriptions",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24.0",
        "seqeval>=1.2.2",
        "pytest>=7.4.0",
        "pytest-mock>=3.12.0",
    ],
    entry_points={
        "console_scripts": [
            "zeroshot-ie=src.app.main:main",
        ],
    },
)
