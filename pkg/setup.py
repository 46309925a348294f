# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
import os

from setuptools import setup

with open(os.path.join(os.path.dirname(__file__), "dipole_controllability/VERSION"), 'r') as vf:
    the_version = vf.read().strip()

setup(
    name = "dipole_controllability",
    version = the_version,
    description = "Controllability checks for N-level dipole-coupled quantum systems",
    packages=["dipole_controllability"],
    python_requires = '>=3.8',
    install_requires = ['numpy>=1.21', 'jsonschema>=4.0'],
    tests_require = ['pytest', 'hypothesis'],
    test_suite = 'tests',
    package_data={
        # Export VERSION and the Json schemas.
        'dipole_controllability': ['VERSION', 'schema/*.json']
    },
    entry_points={
        'console_scripts': ['dipole-controllability=dipole_controllability.cli:main'],
    },
    zip_safe=False
)
