#!/usr/bin/env python

from setuptools import setup, find_packages

with open("requirements.txt", "r") as reqs_file:
    requirements = reqs_file.read().splitlines()

with open("README.md", "r") as fh:
    long_description = fh.read()

VERSION = '0.1.0'

setup(name='chiral-cohomology',
      version=VERSION,
      description='Exact computation of chiral equivariant cohomology of Lie algebras and linear representations.',
      long_description=long_description,
      long_description_content_type="text/markdown",
      packages=find_packages(exclude=('tests',)),
      entry_points={
          'console_scripts': ['chiral-coh=chiralcoh.cli:main'],
      },
      python_requires='>=3.8',
      classifiers=[
          "Development Status :: 3 - Alpha",
          "Intended Audience :: Science/Research",
          "Programming Language :: Python :: 3.8",
          "Programming Language :: Python :: 3.9",
          "Programming Language :: Python :: 3.10",
          "Programming Language :: Python :: 3.11",
          "License :: OSI Approved :: Apache Software License",
          "Topic :: Scientific/Engineering :: Mathematics",
          "Operating System :: POSIX :: Linux"
      ],
      install_requires=requirements
)
