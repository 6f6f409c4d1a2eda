#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Numerical eigenvalues of −u″/2m + [l(l+1)/(2mr²) + V(r)] u = E u on ]0, r_max], u(0) = u(r_max) = 0.

The operator is discretized by three-point finite differences on uniform meshes of steps h, h/2 and h/4, and the
eigenvalues are Romberg-extrapolated over the three meshes, removing the h² and h³ error terms.
"""

# IMPORTS #############################################################################################################


import csv
import logging
from collections import defaultdict
from math import sqrt
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from datatypes import (
	EigenEntry, EigenTable, PotentialSpec, Provenance, QuantumNumbers, ReducedProblem, SolverConfig,
)

from errors import ConvergenceError, DomainError, FallingToCenterError

import numpy as np

from potentials import embed, evaluate, is_coulombic, validate

from scipy.linalg import eigh_tridiagonal

from scipy.special import zeta

from timed import timed_callable

from tqdm import tqdm


# CONSTANTS ###########################################################################################################


_MODULE = "spectral_solver"
_TURNING_SAMPLES = 2000
_CUTOFF_ITERATIONS = 12
_CUTOFF_SLACK = 1.05
_BISECTION_TOLERANCE = 2.0 * np.finfo(float).tiny
# beyond this origin power the endpoint terms are below double precision
_ORIGIN_ORDER = 12.0

Problem = Union[PotentialSpec, ReducedProblem]


# FUNCTIONS ###########################################################################################################


def _potential(problem: Problem) -> PotentialSpec:
	return embed(problem) if isinstance(problem, ReducedProblem) else validate(problem)


def label(problem: Problem) -> Tuple[str, Optional[float], str]:
	"""Returns the (family, β, formulation) a table row of the problem is labelled with.

	Reduced problems carry their β and formulation; potentials given by their physical parameters carry no β and the
	`physical` formulation.
	"""

	if isinstance(problem, ReducedProblem):
		return problem.family.value, problem.beta, problem.formulation.value

	return problem.family.value, None, "physical"


def _centrifugal_strength(spec: PotentialSpec, l: int) -> float:  # noqa: E741
	"""Coefficient C of the whole C/r² part of the effective potential."""

	centrifugal = sum(term.sign * term.coefficient for term in spec.terms if term.exponent == -2.0)
	return l * (l + 1) / (2.0 * spec.mass) + centrifugal


def _check_bounded(spec: PotentialSpec, l: int) -> None:  # noqa: E741
	if 2.0 * spec.mass * _centrifugal_strength(spec, l) <= -0.25:
		raise FallingToCenterError("the attractive 1/r² part is too strong for l=" + str(l), module=_MODULE)

	outer = max(spec.terms, key=lambda term: term.exponent)
	if 0.0 < outer.exponent and outer.sign < 0:
		raise ConvergenceError("the potential is unbounded below at large r", module=_MODULE)


def _effective(spec: PotentialSpec, l: int, r: np.ndarray) -> np.ndarray:  # noqa: E741
	return l * (l + 1) / (2.0 * spec.mass * r * r) + evaluate(spec, r)


def _mesh(cutoff: float, size: int) -> Tuple[np.ndarray, float]:
	step = cutoff / (size + 1)
	return step * np.arange(1, size + 1), step


def _operator(
	spec: PotentialSpec,
	l: int,  # noqa: E741
	cutoff: float,
	size: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
	"""Diagonal, off-diagonal and radii of the finite-difference Hamiltonian."""

	radii, step = _mesh(cutoff, size)
	kinetic = 1.0 / (spec.mass * step * step)

	return kinetic + _effective(spec, l, radii), np.full(size - 1, -0.5 * kinetic), radii


def _levels(spec: PotentialSpec, l: int, cutoff: float, size: int, highest: int) -> np.ndarray:  # noqa: E741
	diagonal, off_diagonal, _ = _operator(spec, l, cutoff, size)

	return eigh_tridiagonal(
		diagonal,
		off_diagonal,
		eigvals_only=True,
		select="i",
		select_range=(0, highest),
		lapack_driver="stebz",
		tol=_BISECTION_TOLERANCE,
	)


def _outer_turning_point(spec: PotentialSpec, l: int, cutoff: float, energy: float) -> float:  # noqa: E741
	radii = np.linspace(cutoff / _TURNING_SAMPLES, cutoff, _TURNING_SAMPLES)
	allowed = np.flatnonzero(_effective(spec, l, radii) < energy)

	if not allowed.size:
		return float(radii[np.argmin(_effective(spec, l, radii))])

	return float(radii[allowed[-1]])


def _cutoff(spec: PotentialSpec, l: int, highest: int, cfg: SolverConfig) -> float:  # noqa: E741
	"""Picks the box radius from the classical turning point of the highest level, refined on coarse meshes."""

	if cfg.domain_cutoff is not None:
		return cfg.domain_cutoff

	factor = 6.0 if is_coulombic(spec) else 3.0
	coarse = max(64, cfg.mesh_size // 4)
	cutoff = cfg.min_cutoff

	for _ in range(_CUTOFF_ITERATIONS):
		energy = _levels(spec, l, cutoff, coarse, highest)[-1]
		needed = factor * _outer_turning_point(spec, l, cutoff, energy)
		if needed <= _CUTOFF_SLACK * cutoff:
			logging.debug("Box radius " + format(cutoff, ".4g") + " for l=" + str(l))
			return cutoff
		cutoff = needed

	raise ConvergenceError(
		"no box radius holds level n=" + str(highest) + ", l=" + str(l) + " (is it bound?)",
		module=_MODULE,
	)


def _meshes(size: int) -> Tuple[int, int, int]:
	"""Mesh sizes of steps h, h/2 and h/4 on the same box."""

	return size, 2 * size + 1, 4 * size + 3


def _romberg(first, second, third):
	"""Removes the h² then the h³ error terms from values computed on meshes of steps h, h/2 and h/4."""

	coarse = (4.0 * second - first) / 3.0
	fine = (4.0 * third - second) / 3.0

	return (8.0 * fine - coarse) / 7.0, fine


def _extrapolated(
	spec: PotentialSpec,
	l: int,  # noqa: E741
	highest: int,
	cfg: SolverConfig,
) -> Tuple[np.ndarray, np.ndarray]:
	"""Returns the levels 0..highest of one l sector with their accuracy estimates."""

	_check_bounded(spec, l)
	cutoff = _cutoff(spec, l, highest, cfg)
	size = cfg.mesh_size

	if not cfg.richardson:
		fine = _levels(spec, l, cutoff, size, highest)
		coarse = _levels(spec, l, cutoff, (size - 1) // 2, highest)
		return fine, np.abs(fine - coarse)

	final, fine = _romberg(*(_levels(spec, l, cutoff, mesh, highest) for mesh in _meshes(size)))

	return final, np.maximum(np.abs(final - fine), 1e-11 * np.maximum(1.0, np.abs(final)))


def _sectors(levels: Iterable[QuantumNumbers]) -> Dict[int, List[int]]:
	sectors = defaultdict(list)
	for level in levels:
		if level.n < 0 or level.l < 0:
			raise DomainError("quantum numbers must be >= 0, got " + str(tuple(level)), module=_MODULE)
		sectors[level.l].append(level.n)

	return dict(sorted(sectors.items()))


@timed_callable("Solving the radial equation numerically...")
def eigenvalues(problem: Problem, levels: Iterable[QuantumNumbers], cfg: SolverConfig) -> EigenTable:
	"""Computes the eigenvalues of a problem for a window of levels.

	Parameters
	----------
	problem : Union[PotentialSpec, ReducedProblem]
		A potential, or a reduced problem solved through its reduced Hamiltonian.
	levels : Iterable[QuantumNumbers]
		The requested (n, l) pairs.
	cfg : SolverConfig
		The mesh and box configuration.

	Returns
	-------
	EigenTable
		One numeric row per level, with its accuracy estimate.

	Raises
	------
	FallingToCenterError
		If the spectrum of an l sector is unbounded below.
	ConvergenceError
		If the potential does not confine, or no box radius holds a level.
	"""

	if cfg.mesh_size < 64:
		raise DomainError("the mesh size must be >= 64, got " + str(cfg.mesh_size), module=_MODULE)

	spec = _potential(problem)
	family, beta, formulation = label(problem)
	table = EigenTable.empty(Provenance.numeric)

	sectors = tqdm(_sectors(levels).items(), desc="l sectors", unit="sector", leave=False, disable=None)
	for l, radial in sectors:  # noqa: E741
		energies, accuracies = _extrapolated(spec, l, max(radial), cfg)
		for n in radial:
			logging.debug("n=" + str(n) + ", l=" + str(l) + ": " + repr(float(energies[n])))
			table.add(EigenEntry(
				family, beta, formulation, n, l, float(energies[n]), Provenance.numeric.value, float(accuracies[n]),
			))

	return table


def _integral(step: float, density: np.ndarray, radii: np.ndarray, k: float, exponent: float) -> float:
	"""Integral of u²r^k over ]0, r_max] from the mesh values of u² ~ r^(2s) G(r).

	The mesh sum misses the origin end of the Euler-Maclaurin expansion, whose terms are
	ζ(−α−i) h^(α+i+1) G⁽ⁱ⁾(0)/i! with α = 2s + k. G(0) and G′(0) are extrapolated from the first two nodes.
	"""

	power = 2.0 * exponent + k
	total = step * float(np.sum(density * radii**k))
	if power > _ORIGIN_ORDER:
		return total

	shape = density[:2] / radii[:2]**(2.0 * exponent)
	slope = (shape[1] - shape[0]) / step
	origin = shape[0] - slope * step

	return float(total - zeta(-power) * step**(power + 1.0) * origin - zeta(-power - 1.0) * step**(power + 2.0) * slope)


def _moment(spec: PotentialSpec, q: QuantumNumbers, k: float, exponent: float, cutoff: float, size: int) -> float:
	diagonal, off_diagonal, radii = _operator(spec, q.l, cutoff, size)
	_, vectors = eigh_tridiagonal(diagonal, off_diagonal, select="i", select_range=(q.n, q.n))
	density = vectors[:, 0]**2
	step = float(radii[0])

	return _integral(step, density, radii, k, exponent) / _integral(step, density, radii, 0.0, exponent)


def expectation_r_power(problem: Problem, q: QuantumNumbers, k: float, cfg: SolverConfig) -> float:
	"""Computes ⟨r^k⟩ in the (n, l) eigenstate, Romberg-extrapolated over the three meshes.

	Near the origin u ~ r^s with s = 1/2 + √(1/4 + 2mC), C being the strength of the whole 1/r² part. The quadrature of
	u²r^k is corrected for that behaviour, so negative powers keep the accuracy of the eigenvalues.

	Raises
	------
	DomainError
		If r^k |u|² is not integrable at the origin.
	"""

	if k == 0.0:
		return 1.0

	spec = _potential(problem)
	_check_bounded(spec, q.l)
	exponent = 0.5 + sqrt(0.25 + 2.0 * spec.mass * _centrifugal_strength(spec, q.l))
	if 2.0 * exponent + k <= -1.0:
		raise DomainError("<r^" + str(k) + "> diverges for l=" + str(q.l), module=_MODULE)

	cutoff = _cutoff(spec, q.l, q.n, cfg)
	if not cfg.richardson:
		return _moment(spec, q, k, exponent, cutoff, cfg.mesh_size)

	final, _ = _romberg(*(_moment(spec, q, k, exponent, cutoff, mesh) for mesh in _meshes(cfg.mesh_size)))

	return float(final)


def read_csv(path: Path) -> EigenTable:
	"""Reads an eigenvalue table back from its CSV form, skipping `#` comment lines.

	Parameters
	----------
	path : Path
		A CSV file with the columns family, beta, formulation, n, l, energy, provenance, accuracy.

	Returns
	-------
	EigenTable
		The table, with the provenance of its first row.
	"""

	with path.open(newline="") as stream:
		rows = list(csv.DictReader(line for line in stream if not line.lstrip().startswith("#")))

	if not rows:
		raise DomainError("no eigenvalue rows in " + str(path), module=_MODULE)

	table = EigenTable.empty(Provenance(rows[0]["provenance"]))
	try:
		for row in rows:
			table.add(EigenEntry(
				row["family"],
				float(row["beta"]) if row["beta"] else None,
				row["formulation"],
				int(row["n"]),
				int(row["l"]),
				float(row["energy"]),
				row["provenance"],
				float(row["accuracy"]) if row["accuracy"] else 0.0,
			))
	except (KeyError, TypeError, ValueError) as error:
		raise DomainError("malformed eigenvalue table " + str(path) + ": " + str(error), module=_MODULE) from error

	logging.info("Read " + str(len(rows)) + " eigenvalues from " + path.name)

	return table
