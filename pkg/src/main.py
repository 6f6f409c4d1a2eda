#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Resources
	https://numpydoc.readthedocs.io/en/latest/format.html
	https://docs.scipy.org/doc/scipy/reference/generated/scipy.linalg.eigh_tridiagonal.html
	https://docs.scipy.org/doc/scipy/reference/generated/scipy.optimize.least_squares.html

Static analysis
	tests :			https://github.com/pytest-dev/pytest
	style :			https://github.com/PyCQA/flake8
"""

# IMPORTS #############################################################################################################


import logging
from argparse import ArgumentParser
from pathlib import Path
from typing import List, Optional

from builder import build

from calibration import MODEL_NAMES

from commands import run

from datatypes import Command, Family, Formulation, ModelKind

from errors import AfmError, ConfigError

from format import OutputFormat

import log


# CONSTANTS ###########################################################################################################


_FAMILIES = [family.value for family in Family if family not in (Family.pure_power, Family.two_power)]

_HELP = {
	Command.spectrum: "Compute the numerical eigenvalues of a window of levels.",
	Command.afm: "Compute the auxiliary field energies of a window of levels.",
	Command.compare: "Join numerical and auxiliary field energies, with their deviations and chi(beta).",
	Command.fit: "Calibrate the quantum-number function N(beta) of a family.",
	Command.tables: "Reproduce the parameter, chi(beta) and eigenvalue tables of a family.",
}


# FUNCTIONS ###########################################################################################################


def _add_problem_arggroup(parser: ArgumentParser) -> ArgumentParser:
	"""Adds the arguments describing the Hamiltonian and the levels to the parser, then returns it.

	Parameters
	----------
	parser : ArgumentParser
		An `ArgumentParser`, to which will be added an argument group.

	Returns
	-------
	parser : ArgumentParser
		An `ArgumentParser` holding the program's CLI.
	"""

	group = parser.add_argument_group("problem")
	group.add_argument("--family", choices=_FAMILIES, help="The potential family.")
	group.add_argument("--beta", type=float, help="The dimensionless parameter of the reduced Hamiltonian.")
	group.add_argument("--mass", type=float, help="The mass m of the physical Hamiltonian (instead of --beta).")
	group.add_argument("--a", type=float, help="The first physical parameter.")
	group.add_argument("--b", type=float, help="The second physical parameter.")
	group.add_argument("--sign", type=int, choices=[1, -1], help="The sign of the 1/r^2 term (quad-centrifugal).")
	group.add_argument(
		"--formulation",
		choices=[member.value for member in Formulation],
		help="The reduction form: eps, or eta for the quad-coulomb and funnel families.",
	)
	group.add_argument("--n", type=int, nargs="+", help="The radial quantum numbers.", metavar="N")
	group.add_argument("--l", type=int, nargs="+", help="The orbital quantum numbers.", metavar="L")
	group.add_argument("--n-max", type=int, help="The largest radial quantum number (default: 3).", dest="n_max")
	group.add_argument("--l-max", type=int, help="The largest orbital quantum number (default: 3).", dest="l_max")

	return parser


def _add_model_arggroup(parser: ArgumentParser) -> ArgumentParser:
	"""Adds the arguments selecting the quantum-number model N(beta) to the parser, then returns it."""

	group = parser.add_argument_group("quantum-number model")
	group.add_argument("--nmodel", choices=MODEL_NAMES, help="A named model (default: default).")
	group.add_argument(
		"--model-kind",
		choices=[member.value for member in ModelKind],
		help="The shape of explicit b(beta) and c(beta) models.",
		dest="model_kind",
	)
	group.add_argument("--b-params", type=float, nargs=3, help="p1 p2 p3 of b(beta).", dest="b_params", metavar="P")
	group.add_argument("--c-params", type=float, nargs=3, help="q1 q2 q3 of c(beta).", dest="c_params", metavar="Q")
	group.add_argument("--generic", action="store_true", default=None, help="Use the generic auxiliary field engine.")

	return parser


def _add_calibration_arggroup(parser: ArgumentParser) -> ArgumentParser:
	"""Adds the arguments of the calibration to the parser, then returns it."""

	group = parser.add_argument_group("calibration")
	group.add_argument("--numeric", type=Path, help="Read the numerical eigenvalues from a CSV FILE.", metavar="FILE")
	group.add_argument("--constraints", choices=["set1", "set2"], help="The constraint set of the fit (default: set2).")
	group.add_argument("--kind", choices=[member.value for member in ModelKind], help="The fitted shape.")
	group.add_argument("--betas", type=float, nargs="+", help="The beta grid of the fit.", metavar="BETA")
	group.add_argument("--refit", action="store_true", default=None, help="Append refitted parameter rows.")
	group.add_argument("--mesh-size", type=int, help="The coarsest mesh size (default: 8000).", dest="mesh_size")
	group.add_argument("--jobs", type=int, help="The number of worker threads (default: 1).")

	return parser


def _add_output_arggroup(parser: ArgumentParser) -> ArgumentParser:
	"""Adds the arguments of the output to the parser, then returns it."""

	parser.add_argument(
		'-f', '--format',
		nargs=1,
		choices=[member.name for member in OutputFormat],
		help="Either one of " + ', '.join(member.name for member in OutputFormat) + " (default: text).",
		metavar="FORMAT",
		dest="format",
	)
	parser.add_argument("--output", help="Write the report to FILE instead of stdout.", metavar="FILE")
	parser.add_argument("--digits", type=int, help="The number of significant digits printed.")
	parser.add_argument("--config", type=Path, help="Read default values from a JSON FILE.", metavar="FILE")
	parser.add_argument(
		"--verbose",
		action="store_true",
		help="Toggle program verbosity.",
		default=None,
	)

	return parser


def create_cli_parser() -> ArgumentParser:
	"""Creates a CLI argument parser and returns it.

	Returns
	-------
	parser : ArgumentParser
		An `ArgumentParser` holding the program's CLI.
	"""

	parser = ArgumentParser(
		prog="AFM Spectra",
		description="Approximate radial Schrödinger eigenenergies with the auxiliary field method.",
		allow_abbrev=True,
	)
	parser.add_argument("--version", action="version", version="%(prog)s 0.1.0")

	subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
	subparsers.required = True

	for command in Command:
		subparser = subparsers.add_parser(command.value, help=_HELP[command], description=_HELP[command])
		_add_output_arggroup(_add_calibration_arggroup(_add_model_arggroup(_add_problem_arggroup(subparser))))

	return parser


# ENTRY POINT #########################################################################################################


def main(argv: Optional[List[str]] = None) -> int:
	"""Script entry point.

	Parameters
	----------
	argv : Optional[List[str]]
		The command-line arguments (default is `sys.argv[1:]`).

	Returns
	-------
	int
		`0` on success, `1` if the configuration is invalid, `2` if a computation failed.
	"""

	args = create_cli_parser().parse_args(argv)
	log.setup(verbose=bool(args.verbose))

	try:
		config = build(args)
		log.setup(verbose=config.verbose)
		return run(config)
	except ConfigError as error:
		logging.error(str(error))
		return 1
	except AfmError as error:
		logging.error(str(error))
		return 2


if __name__ == "__main__":
	exit(main())
