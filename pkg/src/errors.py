#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


from typing import Optional


# CLASSES #############################################################################################################


class AfmError(Exception):
	"""Base class of every error raised by the package.

	Attributes
	----------
	module : str
		The module the error comes from (default is the class' `default_module`).
	slug : str
		A short, stable identifier of the failure.

	Methods
	-------
	code
		The module-qualified code of the error, e.g. `afm_engine.no-minimum`.
	"""

	default_module = "afm"
	slug = "error"

	def __init__(self: "AfmError", message: str, module: Optional[str] = None) -> None:
		super().__init__(message)
		self.module = module if module is not None else self.default_module

	@property
	def code(self: "AfmError") -> str:
		return self.module + "." + self.slug

	def __str__(self: "AfmError") -> str:
		return "[" + self.code + "] " + super().__str__()


class DomainError(AfmError, ValueError):
	"""An argument lies outside the domain of a formula."""

	slug = "domain"


class UnsupportedReductionError(AfmError):
	default_module = "potentials"
	slug = "unsupported-reduction"


class InvalidPotentialError(AfmError, ValueError):
	"""The terms of a potential do not match its family, or break a term invariant."""

	default_module = "potentials"
	slug = "invalid-spec"


class FallingToCenterError(AfmError):
	"""An attractive 1/r² piece makes the spectrum unbounded below."""

	slug = "falling-to-center"


class InversionFailedError(AfmError):
	default_module = "afm_engine"
	slug = "inversion-failed"


class DegenerateFieldError(AfmError):
	"""K = V'/P' is constant: V is proportional to the starting potential."""

	default_module = "afm_engine"
	slug = "degenerate-field"


class NoMinimumError(AfmError):
	default_module = "afm_engine"
	slug = "no-minimum"


class ConvergenceError(AfmError):
	default_module = "spectral_solver"
	slug = "convergence"


class IncompleteTableError(AfmError):
	default_module = "calibration"
	slug = "incomplete-table"


class FitFailedError(AfmError):
	default_module = "calibration"
	slug = "fit-failed"


class ConfigError(AfmError):
	"""A run configuration is invalid.

	Attributes
	----------
	field : str
		The name of the offending configuration field.
	"""

	default_module = "cli"
	slug = "invalid-config"

	def __init__(self: "ConfigError", field: str, message: str) -> None:
		super().__init__(field + ": " + message)
		self.field = field
