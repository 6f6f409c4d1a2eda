#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


import logging
import sys
from typing import Callable, Dict, Optional, Tuple

from afm_engine import solve_potential

from calibration import calibrate, reproduce_tables

from closed_form import reduced_afm_energy

from datatypes import (
	Command, EigenEntry, EigenTable, Family, Formulation, PotentialSpec, Provenance, QuantumNumbers, ReducedProblem,
	Report, RunConfig, Table, TableSet,
)

from errors import ConfigError, IncompleteTableError

from format import OutputFormat

import numpy as np

from potentials import anharmonic, embed, funnel, kratzer, quad_centrifugal, quad_coulomb, reduce

from spectral_solver import eigenvalues, label, read_csv

from timed import timed_callable


# CONSTANTS ###########################################################################################################


_FACTORIES: Dict[Family, Callable[..., PotentialSpec]] = {
	Family.kratzer: lambda m, a, b, sign: kratzer(m, a),
	Family.quad_centrifugal: quad_centrifugal,
	Family.anharmonic: lambda m, a, b, sign: anharmonic(m, a, b),
	Family.quad_coulomb: lambda m, a, b, sign: quad_coulomb(m, a, b),
	Family.funnel: lambda m, a, b, sign: funnel(m, a, b),
}


# FUNCTIONS ###########################################################################################################


def problem_of(config: RunConfig) -> Tuple[ReducedProblem, float, Optional[PotentialSpec]]:
	"""Returns the reduced problem of a run, its energy scale, and the physical potential when one was given.

	Parameters
	----------
	config : RunConfig
		A run holding either β or the physical parameters (m, a, b).

	Returns
	-------
	Tuple[ReducedProblem, float, Optional[PotentialSpec]]
		The reduced problem, the scale turning reduced energies into physical ones (`1` for a given β), and the
		physical potential (`None` for a given β).
	"""

	if config.physical is None:
		return ReducedProblem(config.family, config.beta, config.formulation, config.sign), 1.0, None

	mass, a, b = config.physical
	spec = _FACTORIES[config.family](mass, a, b, config.sign)
	reduced, scale = reduce(spec, config.formulation)
	logging.info("Reduced to beta=" + repr(reduced.beta) + " with the energy scale " + repr(scale))

	return reduced, scale, spec


def _starting_power(problem: ReducedProblem) -> float:
	"""The power of the solvable part matching the closed forms: Coulomb for the Coulombic starts, harmonic otherwise."""

	coulombic = problem.family in (Family.kratzer, Family.funnel) or problem.formulation is Formulation.eta
	return -1.0 if coulombic else 2.0


def afm_table(config: RunConfig) -> EigenTable:
	"""Computes the auxiliary field energies of a run, from the closed forms or from the generic engine."""

	reduced, scale, spec = problem_of(config)
	family, beta, formulation = label(reduced if spec is None else spec)
	provenance = Provenance.afm_generic if config.generic else Provenance.afm_closed_form
	table = EigenTable.empty(provenance)

	for q in config.levels:
		n_value = config.nmodel.n_value(reduced.beta, q)
		if config.generic:
			energy = solve_potential(embed(reduced), _starting_power(reduced), n_value).energy
		else:
			energy = reduced_afm_energy(reduced, q, n_value)
		table.add(EigenEntry(family, beta, formulation, q.n, q.l, scale * energy, provenance.value, 0.0))

	return table


def numeric_table(config: RunConfig) -> EigenTable:
	"""Returns the numerical eigenvalues of a run, read from `--numeric` when given and solved otherwise."""

	reduced, _, spec = problem_of(config)
	if config.numeric is None:
		return eigenvalues(reduced if spec is None else spec, config.levels, config.solver)

	table = read_csv(config.numeric)
	families = {entry.family for entry in table.rows()}
	if families != {config.family.value}:
		raise ConfigError("numeric", "the table holds the " + ", ".join(sorted(families)) + " families")

	return table


def _entry(table: EigenTable, beta: Optional[float], q: QuantumNumbers) -> EigenEntry:
	entry = table.entry(beta, q.n, q.l)
	if entry is None:
		raise IncompleteTableError("no eigenvalue for beta=" + str(beta) + ", " + str(tuple(q)), module="cli")

	return entry


def compare_tables(config: RunConfig, numeric: EigenTable, approximate: EigenTable) -> TableSet:
	"""Joins numerical and auxiliary field energies level by level, with their deviations and χ(β)."""

	family, beta, formulation = approximate.rows()[0][:3]
	rows = []
	for q in config.levels:
		afm = _entry(approximate, beta, q)
		exact = _entry(numeric, beta, q)
		deviation = abs(afm.energy - exact.energy)
		relative = deviation / abs(exact.energy) if exact.energy else np.inf
		rows.append([q.n, q.l, exact.energy, afm.energy, deviation, relative])

	chi = float(np.mean(np.square([row[4] for row in rows])))

	return TableSet(
		"comparison (" + family + ")",
		[
			Table("deviations", ["n", "l", "numeric", "afm", "abs_dev", "rel_dev"], rows),
			Table("chi(beta)", ["family", "beta", "formulation", "provenance", "chi"], [
				[family, beta, formulation, approximate.provenance.value, chi],
			]),
		],
	)


def execute(config: RunConfig) -> Report:
	"""Runs the pipeline of a command, then returns its report.

	Parameters
	----------
	config : RunConfig
		A validated run.

	Returns
	-------
	Report
		`spectrum`: the numerical eigenvalues; `afm`: the auxiliary field energies; `compare`: the joined table and
		χ(β); `fit`: the calibration report; `tables`: the reproduced calibration tables.
	"""

	if config.command is Command.spectrum:
		return numeric_table(config)
	if config.command is Command.afm:
		return afm_table(config)
	if config.command is Command.compare:
		return compare_tables(config, numeric_table(config), afm_table(config))

	numeric = None if config.numeric is None else read_csv(config.numeric)
	if config.command is Command.fit:
		return calibrate(
			config.family,
			config.kind,
			config.constraints,
			config.betas,
			config.solver,
			config.jobs,
			numeric,
			config.levels,
		)

	return reproduce_tables(config.family, config.solver, config.jobs, config.refit, numeric)


@timed_callable("Running the command...")
def run(config: RunConfig) -> int:
	"""Runs a command and writes its formatted report to the output path, or to stdout.

	Parameters
	----------
	config : RunConfig
		A validated run.

	Returns
	-------
	int
		The exit status, `0`.
	"""

	output = OutputFormat[config.output_format](execute(config), config.digits)

	if config.output is None:
		sys.stdout.write(output)
	else:
		config.output.parent.mkdir(parents=True, exist_ok=True)
		config.output.write_text(output)
		logging.info("Report written to " + str(config.output))

	return 0
