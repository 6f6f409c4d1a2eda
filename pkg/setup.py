#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from setuptools import setup

setup(
	name="afm-spectra",
	version="0.1.0",
	py_modules=[
		"afm_engine", "builder", "calibration", "closed_form", "commands", "datatypes", "errors", "format", "log",
		"main", "potentials", "spectral_solver", "timed",
	],
	package_dir={'': 'src'},
	install_requires=['numpy>=1.20', 'scipy>=1.6', 'tqdm', 'recordclass>=0.13', 'defusedxml>=0.6'],
	extras_require={'dev': ['pytest>=7.0', 'flake8']},
	entry_points={'console_scripts': ['afm-spectra=main:main']},

	python_requires=">=3.8",

	# metadata to display on PyPI
	author="Antoine Sébert",
	author_email="antoine.sb@orange.fr",
	description="Approximate radial Schrödinger eigenenergies with the auxiliary field method.",
	keywords="quantum-mechanics auxiliary-field-method eigenvalues",
)
