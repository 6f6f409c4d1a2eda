#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


import csv
from pathlib import Path
from typing import Callable, Dict, List

from datatypes import SolverConfig

import pytest


# CONSTANTS ###########################################################################################################


REFERENCE_DIR = Path(__file__).resolve().parent.parent / "data" / "reference"


# FIXTURES ############################################################################################################


@pytest.fixture(scope="session")
def reference() -> Callable[[str], List[Dict[str, str]]]:
	"""Reads a reference table of `data/reference`, skipping `#` comment lines."""

	def read(name: str) -> List[Dict[str, str]]:
		with (REFERENCE_DIR / name).open(newline="") as stream:
			return list(csv.DictReader(line for line in stream if not line.startswith("#")))

	return read


@pytest.fixture
def coarse() -> SolverConfig:
	"""A solver configuration cheap enough for the quick tests."""

	return SolverConfig.default(1000)


@pytest.fixture(scope="session")
def fine() -> SolverConfig:
	return SolverConfig.default()
