# -*- coding:utf-8 -*-

from setuptools import setup


setup(
    name="walkport",
    version="0.3.0",
    packages=[
        "walkport",
        "walkport.utils",
    ],
    package_data={
        "walkport": ["schemas/*.json"],
    },
    entry_points={
        "console_scripts": ["walkport = walkport.cli:main"],
    },
    description="State-vector simulator for shared secret teleportation with multi-walker quantum walks.",
    license="MIT",
    keywords=[
        "walkport", "quantum", "quantum-walk", "teleportation", "secret-sharing", "simulator"
    ],
    python_requires=">=3.7",
    install_requires=[
        "numpy>=1.17",
        "jsonschema>=3.2"
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
)
