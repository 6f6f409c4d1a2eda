#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


import logging
import os
from argparse import Namespace
from json import JSONDecodeError, loads
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from calibration import DEFAULT_KINDS, named_model, validate_model

from datatypes import (
	Command, Family, Formulation, ModelKind, NLevelModel, QuantumNumbers, RunConfig, SolverConfig, window,
)

from errors import AfmError, ConfigError

from format import OutputFormat

from timed import timed_callable


# CONSTANTS ###########################################################################################################


"""Environment variable holding the directory relative output paths are placed in."""
OUTPUT_DIR_VARIABLE = "AFM_OUTPUT_DIR"

_DEFAULTS: Dict[str, Any] = {
	"beta": None,
	"mass": None,
	"a": None,
	"b": None,
	"sign": 1,
	"formulation": Formulation.epsilon.value,
	"n": None,
	"l": None,
	"n_max": 3,
	"l_max": 3,
	"nmodel": "default",
	"model_kind": None,
	"b_params": None,
	"c_params": None,
	"generic": False,
	"numeric": None,
	"constraints": "set2",
	"kind": None,
	"betas": None,
	"refit": False,
	"mesh_size": 8000,
	"jobs": 1,
	"format": "text",
	"output": None,
	"digits": None,
	"verbose": False,
}

_SOLVED = (Command.spectrum, Command.afm, Command.compare)


# FUNCTIONS ###########################################################################################################


def _import_config(filepath: Optional[Path]) -> Dict[str, Any]:
	"""Reads the JSON configuration file, whose keys are the long flag names with dashes or underscores.

	Parameters
	----------
	filepath : Optional[Path]
		A `Path` to a *.json* file, or `None`.

	Returns
	-------
	Dict[str, Any]
		The values of the file, keyed by argument name.
	"""

	if filepath is None:
		return {}

	try:
		content = loads(filepath.read_text())
	except (OSError, JSONDecodeError) as error:
		raise ConfigError("config", "cannot read " + str(filepath) + ": " + str(error)) from error

	if not isinstance(content, dict):
		raise ConfigError("config", "the configuration file must hold a JSON object")

	content = {key.replace("-", "_"): value for key, value in content.items()}
	unknown = sorted(set(content) - set(_DEFAULTS) - {"family"})
	if unknown:
		raise ConfigError(unknown[0], "unknown configuration key")

	logging.info("Configuration read from " + filepath.name)

	return content


def _pick(args: Namespace, config: Dict[str, Any], name: str) -> Any:
	"""Returns the value of an argument, explicit flags first, then the configuration file, then the default."""

	value = getattr(args, name, None)
	if value is not None:
		return value[0] if name == "format" else value

	return config.get(name, _DEFAULTS.get(name))


def _require(condition: bool, field: str, message: str) -> None:
	if not condition:
		raise ConfigError(field, message)


def _enum(enumeration: type, value: Any, field: str) -> Any:
	try:
		return enumeration(value)
	except ValueError:
		raise ConfigError(field, "expected one of " + ", ".join(member.value for member in enumeration)) from None


def _float(value: Any, field: str) -> Optional[float]:
	if value is None:
		return None

	try:
		return float(value)
	except (TypeError, ValueError):
		raise ConfigError(field, "expected a number, got " + repr(value)) from None


def _levels(
	n_values: Optional[Sequence[int]],
	l_values: Optional[Sequence[int]],
	n_max: int,
	l_max: int,
) -> List[QuantumNumbers]:
	_require(0 <= n_max, "n_max", "must be >= 0")
	_require(0 <= l_max, "l_max", "must be >= 0")

	n_values = range(n_max + 1) if n_values is None else sorted(set(n_values))
	l_values = range(l_max + 1) if l_values is None else sorted(set(l_values))
	_require(all(0 <= n for n in n_values), "n", "radial quantum numbers must be >= 0")
	_require(all(0 <= l for l in l_values), "l", "orbital quantum numbers must be >= 0")  # noqa: E741

	return window(n_values, l_values)


def _physical(family: Family, mass: Optional[float], a: Optional[float], b: Optional[float]) -> Optional[tuple]:
	if mass is None and a is None and b is None:
		return None

	_require(mass is not None, "mass", "the physical parameters need a mass")
	_require(a is not None, "a", "the physical parameters need the a parameter")
	if b is None:
		_require(family is Family.kratzer, "b", "the " + family.value + " family needs the b parameter")
		b = 0.0

	_require(0.0 < mass, "mass", "must be > 0")

	return mass, a, b


def _model(
	family: Family,
	formulation: Formulation,
	name: str,
	kind: Optional[str],
	b_params: Optional[Sequence[float]],
	c_params: Optional[Sequence[float]],
) -> NLevelModel:
	"""Builds the quantum-number model, from explicit parameters when a kind is given and from the registry otherwise."""

	if kind is None:
		_require(b_params is None and c_params is None, "model_kind", "explicit parameters need a model kind")
		try:
			return named_model(family, name, formulation)
		except AfmError as error:
			raise ConfigError("nmodel", str(error)) from error

	model_kind = _enum(ModelKind, kind, "model_kind")
	_require(b_params is not None and len(b_params) == 3, "b_params", "expected three parameters")
	_require(c_params is not None and len(c_params) == 3, "c_params", "expected three parameters")

	try:
		return validate_model(NLevelModel(
			model_kind,
			tuple(_float(value, "b_params") for value in b_params),
			tuple(_float(value, "c_params") for value in c_params),
			None,
		))
	except AfmError as error:
		raise ConfigError("b_params", str(error)) from error


def _output(output: Optional[str]) -> Optional[Path]:
	if output is None:
		return None

	path = Path(output)
	directory = os.environ.get(OUTPUT_DIR_VARIABLE)
	if directory and not path.is_absolute():
		path = Path(directory) / path

	return path


@timed_callable("Building the run configuration...")
def build(args: Namespace) -> RunConfig:
	"""Creates a validated run configuration from the parsed arguments, then returns it.

	Explicit flags win over the values of the `--config` JSON file, which win over the defaults; the environment
	variable `AFM_OUTPUT_DIR` holds the directory of relative output paths.

	Parameters
	----------
	args : Namespace
		The parsed command line.

	Returns
	-------
	RunConfig
		The run configuration.

	Raises
	------
	ConfigError
		If a value is invalid, naming the offending field.
	"""

	config = _import_config(getattr(args, "config", None))
	command = _enum(Command, args.command, "command")

	family_name = _pick(args, config, "family")
	_require(family_name is not None, "family", "a potential family is required")
	family = _enum(Family, family_name, "family")
	_require(family not in (Family.pure_power, Family.two_power), "family", "expected a named two-parameter family")

	formulation = _enum(Formulation, _pick(args, config, "formulation"), "formulation")
	_require(
		formulation is Formulation.epsilon or family in (Family.quad_coulomb, Family.funnel),
		"formulation",
		"only the quad-coulomb and funnel families have an eta-form",
	)
	sign = _pick(args, config, "sign")
	_require(sign in (1, -1), "sign", "must be 1 or -1")

	beta = _float(_pick(args, config, "beta"), "beta")
	physical = _physical(
		family,
		_float(_pick(args, config, "mass"), "mass"),
		_float(_pick(args, config, "a"), "a"),
		_float(_pick(args, config, "b"), "b"),
	)
	if command in _SOLVED:
		_require((beta is None) != (physical is None), "beta", "give either beta or the physical parameters, not both")
		_require(beta is None or 0.0 <= beta, "beta", "must be >= 0")
	else:
		_require(family in DEFAULT_KINDS, "family", "the " + family.value + " family has no N(beta) calibration")

	constraints = _pick(args, config, "constraints")
	_require(constraints in ("set1", "set2"), "constraints", "expected set1 or set2")

	kind = _pick(args, config, "kind")
	kind = None if kind is None else _enum(ModelKind, kind, "kind")
	if kind is None:
		kind = DEFAULT_KINDS.get(family, ModelKind.constant)

	betas = _pick(args, config, "betas")
	if betas is not None:
		betas = [_float(value, "betas") for value in betas]
		_require(2 <= len(betas) and all(0.0 <= value for value in betas), "betas", "expected at least two betas >= 0")

	mesh_size = _pick(args, config, "mesh_size")
	_require(isinstance(mesh_size, int) and 64 <= mesh_size, "mesh_size", "must be an integer >= 64")
	jobs = _pick(args, config, "jobs")
	_require(isinstance(jobs, int) and 1 <= jobs, "jobs", "must be an integer >= 1")
	digits = _pick(args, config, "digits")
	_require(digits is None or (isinstance(digits, int) and 1 <= digits), "digits", "must be an integer >= 1")

	output_format = _pick(args, config, "format")
	formats = [member.name for member in OutputFormat]
	_require(output_format in formats, "format", "expected one of " + ", ".join(formats))

	levels = _levels(
		_pick(args, config, "n"),
		_pick(args, config, "l"),
		_pick(args, config, "n_max"),
		_pick(args, config, "l_max"),
	)

	numeric = _pick(args, config, "numeric")
	if numeric is not None:
		numeric = Path(numeric)
		_require(numeric.is_file(), "numeric", "no such file " + str(numeric))

	return RunConfig(
		command,
		family,
		beta,
		physical,
		sign,
		formulation,
		levels,
		_model(
			family,
			formulation,
			_pick(args, config, "nmodel"),
			_pick(args, config, "model_kind"),
			_pick(args, config, "b_params"),
			_pick(args, config, "c_params"),
		),
		bool(_pick(args, config, "generic")),
		numeric,
		constraints,
		kind,
		betas,
		bool(_pick(args, config, "refit")),
		SolverConfig.default(mesh_size),
		jobs,
		output_format,
		_output(_pick(args, config, "output")),
		digits,
		bool(_pick(args, config, "verbose")),
	)
