#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

# Get the version from __init__.py
with open('rcsplit/__init__.py') as fid:
    for line in fid:
        if line.startswith('__version__'):
            version = line.strip().split()[-1][1:-1]
            break

setup(
    # library name
    name='rcsplit',

    # code version
    version=version,

    # list libraries to be imported
    packages=find_packages(exclude=['test']),

    # Descriptions
    description="Exact splitting types of normal bundles of rational curves",
    long_description=open('README.rst').read(),

    entry_points={'console_scripts': ['rcsplit=rcsplit.cli:main']},

    python_requires='>=3.8',

    setup_requires=['pytest-runner'],

    install_requires=['numpy',
                      'sympy>=1.12'],
    tests_require=['pytest'],

)
