#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Generic auxiliary field machinery for H_a = p²/2m + a P(r) + V(r), with P(r) = sgn(η) r^η.

V is traded for ν P(r) + V(J(ν)) − ν P(J(ν)), where the mean point J(ν) inverts K(r) = V′(r)/P′(r),
and the energy

	E_a(ν) = e(a + ν) + V(J(ν)) − ν P(J(ν))

is made stationary in ν, e(z) being the exactly known spectrum of p²/2m + z P(r).
Stationarity reads e′(a + ν) = P(J(ν)), which this module solves in r rather than in ν:

	a + K(r) − N² / (m |η| r^(η+2)) = 0

For a Coulomb-type start the stationary point is a maximum of E_a(ν); it is the auxiliary field value all the same.
"""

# IMPORTS #############################################################################################################


import logging
from math import copysign, exp, isfinite
from typing import Optional, Tuple

from datatypes import AfmSolution, Family, NValue, PotentialSpec, StartingPotential

from errors import ConvergenceError, DegenerateFieldError, DomainError, InversionFailedError, NoMinimumError

import numpy as np

from potentials import evaluate, scaled, validate

from scipy.optimize import brentq


# CONSTANTS ###########################################################################################################


_MODULE = "afm_engine"

"""Sampling of log r used to bracket every one-dimensional root."""
_LOG_RADII = np.arange(-64.0, 65.0)

_RESIDUAL_GATE = 1e-9


# FUNCTIONS ###########################################################################################################


def _require(condition: bool, message: str) -> None:
	if not condition:
		raise DomainError(message, module=_MODULE)


def power_law_energy(m: float, a: float, lam: float, n_value: NValue) -> float:
	"""Computes the eigenvalue of p²/2m + a sgn(λ) r^λ written with the quantum-number combination N.

	Parameters
	----------
	m : float
		The mass, strictly positive.
	a : float
		The strength, strictly positive.
	lam : float
		The power λ, nonzero and above -2.
	n_value : NValue
		The quantum-number combination.

	Returns
	-------
	float
		(2+λ)/(2λ) · (a|λ|)^(2/(λ+2)) · (N²/m)^(λ/(λ+2))
	"""

	_require(isfinite(lam) and lam != 0.0 and -2.0 < lam, "the power must be nonzero and > -2, got " + str(lam))
	_require(0.0 < m and 0.0 < a, "mass and strength must be > 0")
	_require(isfinite(n_value) and 0.0 < n_value, "N must be > 0, got " + str(n_value))

	return (2.0 + lam) / (2.0 * lam) * (a * abs(lam))**(2.0 / (lam + 2.0)) * (n_value**2 / m)**(lam / (lam + 2.0))


def _check_start(start: StartingPotential) -> None:
	_require(
		isfinite(start.eta) and start.eta != 0.0 and -2.0 < start.eta,
		"the starting power must be nonzero and > -2, got " + str(start.eta),
	)
	_require(isfinite(start.a) and 0.0 <= start.a, "the starting coefficient must be >= 0, got " + str(start.a))


def _is_degenerate(spec: PotentialSpec, eta: float) -> bool:
	return all(term.exponent == eta for term in spec.terms)


def _field(spec: PotentialSpec, eta: float, r: np.ndarray) -> np.ndarray:
	"""K(r) = V′(r)/P′(r) = Σ s c λ r^(λ−η) / |η|."""

	return sum(
		term.sign * term.coefficient * term.exponent * np.power(r, term.exponent - eta) for term in spec.terms
	) / abs(eta)


def _bracket(values: np.ndarray, rising: bool = True) -> Optional[Tuple[float, float]]:
	"""Returns the first pair of consecutive log radii where the sampled values cross zero."""

	finite = np.isfinite(values)
	if rising:
		crossings = np.flatnonzero(finite[:-1] & finite[1:] & (values[:-1] < 0.0) & (0.0 <= values[1:]))
	else:
		crossings = np.flatnonzero(finite[:-1] & finite[1:] & (np.sign(values[:-1]) * np.sign(values[1:]) <= 0.0))

	if not crossings.size:
		return None
	if 1 < crossings.size:
		innermost = exp(_LOG_RADII[crossings[0]])
		logging.debug("Several crossings found, keeping the innermost one near r=" + format(innermost, ".3g"))

	return float(_LOG_RADII[crossings[0]]), float(_LOG_RADII[crossings[0] + 1])


def mean_point_J(spec: PotentialSpec, eta: float, nu: float) -> float:  # noqa: N802
	"""Computes the mean point J(ν), the radius where K(r) = V′(r)/P′(r) equals ν.

	Parameters
	----------
	spec : PotentialSpec
		The potential V.
	eta : float
		The power of the starting potential.
	nu : float
		The auxiliary field.

	Returns
	-------
	float
		The unique r > 0 solving |η| ν r^(η−1) = V′(r).

	Raises
	------
	DegenerateFieldError
		If V is a multiple of the starting potential, K being constant.
	InversionFailedError
		If K is not monotone on the sampled radii, or never reaches ν.
	"""

	validate(spec)
	_check_start(StartingPotential(eta))
	if _is_degenerate(spec, eta):
		raise DegenerateFieldError("K is constant: V is proportional to r^" + str(eta), module=_MODULE)

	if len(spec.terms) == 1:
		term = spec.terms[0]
		ratio = abs(eta) * nu / (term.sign * term.coefficient * term.exponent)
		if ratio <= 0.0:
			raise InversionFailedError("K never reaches nu=" + str(nu), module=_MODULE)
		return ratio**(1.0 / (term.exponent - eta))

	with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
		samples = _field(spec, eta, np.exp(_LOG_RADII))

	steps = np.diff(samples[np.isfinite(samples)])
	if not (np.all(0.0 <= steps) or np.all(steps <= 0.0)):
		raise InversionFailedError("K is not monotone over the sampled radii", module=_MODULE)

	bracket = _bracket(samples - nu, rising=False)
	if bracket is None:
		raise InversionFailedError("K never reaches nu=" + str(nu), module=_MODULE)

	return exp(brentq(lambda t: float(_field(spec, eta, np.exp(t))) - nu, *bracket, xtol=1e-14))


def _starting_energy(start: StartingPotential, z: float, n_value: NValue, m: float) -> float:
	return power_law_energy(m, z, start.eta, n_value)


def _starting_slope(start: StartingPotential, z: float, n_value: NValue, m: float) -> float:
	"""e′(z) = sgn(η) (N² / (m |η| z))^(η/(η+2))."""

	eta = start.eta
	return copysign((n_value**2 / (m * abs(eta) * z))**(eta / (eta + 2.0)), eta)


def _starting(eta: float, r: float) -> float:
	return copysign(r**eta, eta)


def auxiliary_energy(
	spec: PotentialSpec,
	start: StartingPotential,
	n_value: NValue,
	m: float,
	nu: float,
) -> float:
	"""Evaluates E_a(ν) = e(a + ν) + V(J(ν)) − ν P(J(ν)) at any field with a + ν > 0."""

	_check_start(start)
	_require(0.0 < start.a + nu, "a + nu must be > 0, got " + str(start.a + nu))
	radius = mean_point_J(spec, start.eta, nu)

	return _starting_energy(start, start.a + nu, n_value, m) + evaluate(spec, radius) - nu * _starting(start.eta, radius)


def _degenerate_solution(spec: PotentialSpec, start: StartingPotential, n_value: NValue, m: float) -> AfmSolution:
	kappa = sum(term.sign * term.coefficient for term in spec.terms) * (1 if 0.0 < start.eta else -1)
	z = start.a + kappa
	if z <= 0.0:
		raise NoMinimumError("the starting problem with field " + str(z) + " has no bound state", module=_MODULE)

	radius = (n_value**2 / (m * abs(start.eta) * z))**(1.0 / (start.eta + 2.0))

	return AfmSolution(kappa, radius, _starting_energy(start, z, n_value, m), 0.0)


def solve(
	spec: PotentialSpec,
	start: StartingPotential,
	n_value: NValue,
	m: Optional[float] = None,
) -> AfmSolution:
	"""Finds the auxiliary field value of the energy of p²/2m + a P(r) + V(r).

	Parameters
	----------
	spec : PotentialSpec
		The potential V.
	start : StartingPotential
		The starting power η and the coefficient a of the solvable part.
	n_value : NValue
		The quantum-number combination of the starting spectrum.
	m : Optional[float]
		The mass (default is the mass of `spec`).

	Returns
	-------
	AfmSolution
		The optimal field ν₀, the mean point J(ν₀), the energy E_a(ν₀), and |dE_a/dν| at ν₀.

	Raises
	------
	NoMinimumError
		If E_a(ν) has no stationary point with a + ν > 0.
	ConvergenceError
		If e′(a + ν₀) and P(J(ν₀)) differ by more than 1e-9, relative to |P(J(ν₀))| when it exceeds 1.
	"""

	validate(spec)
	_check_start(start)
	_require(isfinite(n_value) and 0.0 < n_value, "N must be > 0, got " + str(n_value))
	m = spec.mass if m is None else m
	_require(0.0 < m, "the mass must be > 0, got " + str(m))

	if _is_degenerate(spec, start.eta):
		return _degenerate_solution(spec, start, n_value, m)

	eta = start.eta
	q = n_value**2 / (m * abs(eta))

	def stationarity(r: np.ndarray) -> np.ndarray:
		return start.a + _field(spec, eta, r) - q * np.power(r, -(eta + 2.0))

	with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
		bracket = _bracket(stationarity(np.exp(_LOG_RADII)))
	if bracket is None:
		raise NoMinimumError("E_a(nu) has no stationary point for N=" + str(n_value), module=_MODULE)

	radius = exp(brentq(lambda t: float(stationarity(exp(t))), *bracket, xtol=1e-14))
	nu0 = float(_field(spec, eta, radius))
	z = start.a + nu0
	energy = _starting_energy(start, z, n_value, m) + evaluate(spec, radius) - nu0 * _starting(eta, radius)
	residual = abs(_starting_slope(start, z, n_value, m) - _starting(eta, radius))

	if _RESIDUAL_GATE * max(1.0, abs(_starting(eta, radius))) < residual:
		raise ConvergenceError(
			"stationarity residual " + format(residual, ".3g") + " above the gate for N=" + str(n_value), module=_MODULE,
		)

	return AfmSolution(nu0, radius, energy, residual)


def split_start(spec: PotentialSpec, eta: float) -> Tuple[StartingPotential, PotentialSpec]:
	"""Splits a potential into a starting part a sgn(η) r^η and the rest.

	Only a term of exponent η and sign sgn(η) is taken as the starting part, and only when another term remains;
	otherwise the start has `a = 0` and the whole potential is kept.
	"""

	validate(spec)
	sign = 1 if 0.0 < eta else -1
	index = next((i for i, term in enumerate(spec.terms) if term.exponent == eta and term.sign == sign), None)

	if index is None or len(spec.terms) == 1:
		return StartingPotential(eta), spec

	rest = tuple(term for i, term in enumerate(spec.terms) if i != index)

	return StartingPotential(eta, spec.terms[index].coefficient), PotentialSpec(Family.pure_power, rest, spec.mass)


def solve_potential(spec: PotentialSpec, eta: float, n_value: NValue) -> AfmSolution:
	"""Solves a potential with the starting power η, taking its own η term as the solvable part."""

	start, rest = split_start(spec, eta)
	return solve(rest, start, n_value, spec.mass)


def perturbative_energy(
	small: PotentialSpec,
	sigma: float,
	start: StartingPotential,
	n_value: NValue,
	m: Optional[float] = None,
) -> float:
	"""First-order form e(a) + σ v(J(ν₀)) of the energy of p²/2m + a P(r) + σ v(r).

	Parameters
	----------
	small : PotentialSpec
		The perturbation v.
	sigma : float
		The strength σ of the perturbation.
	start : StartingPotential
		The unperturbed part, with a > 0.
	n_value : NValue
		The quantum-number combination.
	m : Optional[float]
		The mass (default is the mass of `small`).

	Returns
	-------
	float
		The energy, equal to the auxiliary field one up to O(σ²).
	"""

	_check_start(start)
	_require(0.0 < start.a, "the unperturbed coefficient must be > 0")
	m = small.mass if m is None else m
	unperturbed = _starting_energy(start, start.a, n_value, m)
	if sigma == 0.0:
		return unperturbed

	solution = solve(scaled(small, sigma), start, n_value, m)

	return unperturbed + sigma * evaluate(small, solution.mean_point)
