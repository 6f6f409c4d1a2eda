#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


from itertools import product

import afm_engine
from afm_engine import (
	auxiliary_energy, mean_point_J, perturbative_energy, power_law_energy, solve, solve_potential, split_start,
)

from closed_form import reduced_afm_energy

from datatypes import Family, Formulation, PotentialSpec, PowerTerm, QuantumNumbers, ReducedProblem, StartingPotential

from errors import ConvergenceError, DegenerateFieldError, DomainError, InversionFailedError, NoMinimumError

import numpy as np

from potentials import (
	anharmonic, embed, funnel, pure_power, quad_coulomb, reference_strength, scale_energy, scaled,
)

import pytest

from scipy.optimize import brentq


# CONSTANTS ###########################################################################################################


BETAS = (0.1, 0.5, 1.0, 2.0, 10.0)
LEVELS = [QuantumNumbers(n, l) for n, l in product(range(4), range(4))]  # noqa: E741

"""Starting power of each family, with the N it comes with."""
STARTS = {
	Family.kratzer: (-1.0, lambda q: q.n + q.l + 1.0),
	Family.quad_centrifugal: (2.0, lambda q: 2.0 * q.n + q.l + 1.5),
	Family.anharmonic: (2.0, lambda q: 2.0 * q.n + q.l + 1.5),
	Family.quad_coulomb: (2.0, lambda q: 2.0 * q.n + q.l + 1.5),
	Family.funnel: (-1.0, lambda q: q.n + q.l + 1.0),
}


# TESTS ###############################################################################################################


def test_power_law_energies():
	assert power_law_energy(0.5, 1.0, 2.0, 1.5) == pytest.approx(3.0)
	assert power_law_energy(1.0, 1.0, -1.0, 1.0) == pytest.approx(-0.5)
	assert power_law_energy(1.5, 1.0 / 3.0, 1.0, 1.0) == pytest.approx((1.0 / 4.0)**(1.0 / 3.0))

	with pytest.raises(DomainError):
		power_law_energy(1.0, 1.0, -2.0, 1.0)


@pytest.mark.parametrize("family, beta", list(product(STARTS, BETAS)))
def test_generic_engine_matches_the_closed_forms(family, beta):
	problem = ReducedProblem(family, beta)
	eta, n_value = STARTS[family]
	spec = embed(problem)

	for q in LEVELS:
		expected = reduced_afm_energy(problem, q, n_value(q))
		assert solve_potential(spec, eta, n_value(q)).energy == pytest.approx(expected, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("beta", BETAS)
def test_switching_the_start_keeps_the_energy(beta):
	spec = embed(ReducedProblem(Family.quad_coulomb, beta))

	for n_value in (1.0, 1.5, 2.5, 4.0, 7.5):
		harmonic = solve_potential(spec, 2.0, n_value).energy
		coulomb = solve_potential(spec, -1.0, n_value).energy
		assert coulomb == pytest.approx(harmonic, rel=1e-9, abs=1e-12)


def test_eta_forms_match_the_closed_forms():
	for family in (Family.quad_coulomb, Family.funnel):
		problem = ReducedProblem(family, 0.9, Formulation.eta)
		expected = reduced_afm_energy(problem, QuantumNumbers(1, 2), 4.0)
		assert solve_potential(embed(problem), -1.0, 4.0).energy == pytest.approx(expected, rel=1e-9)


def test_solution_is_stationary():
	spec = embed(ReducedProblem(Family.anharmonic, 1.0))
	start, rest = split_start(spec, 2.0)
	solution = solve(rest, start, 2.5, spec.mass)
	step = 1e-5

	assert solution.stationarity_residual < 1e-9
	assert auxiliary_energy(rest, start, 2.5, spec.mass, solution.nu0) == pytest.approx(solution.energy, rel=1e-12)
	slope = (
		auxiliary_energy(rest, start, 2.5, spec.mass, solution.nu0 + step)
		- auxiliary_energy(rest, start, 2.5, spec.mass, solution.nu0 - step)
	) / (2.0 * step)
	assert abs(slope) < 1e-6


def test_mean_point_inverts_the_field():
	spec = quad_coulomb(1.0, 0.25, 2.0)
	radius = mean_point_J(spec, 2.0, 1.0)

	# K(r) = 1/4 + b / (2r³)
	assert 0.25 + 2.0 / (2.0 * radius**3) == pytest.approx(1.0, rel=1e-12)
	assert mean_point_J(pure_power(1.0, 2.0, 1.0), 2.0, 0.5) == pytest.approx(2.0)


def test_mean_point_errors():
	with pytest.raises(DegenerateFieldError):
		mean_point_J(pure_power(1.0, 1.0, 2.0), 2.0, 1.0)
	with pytest.raises(InversionFailedError):
		mean_point_J(quad_coulomb(1.0, 0.25, 2.0), 2.0, 0.1)


def test_degenerate_potential_is_solved_exactly():
	solution = solve(pure_power(0.5, 1.0, 2.0), StartingPotential(2.0), 1.5)

	assert solution.energy == pytest.approx(3.0)
	assert solution.nu0 == 1.0
	assert solution.stationarity_residual == 0.0


def test_no_minimum():
	with pytest.raises(NoMinimumError):
		solve(pure_power(1.0, 1.0, 1.0, sign=-1), StartingPotential(2.0), 1.5)
	with pytest.raises(NoMinimumError):
		solve(pure_power(1.0, 1.0, 2.0, sign=-1), StartingPotential(2.0, 0.5), 1.5)


def test_split_start():
	start, rest = split_start(funnel(1.5, 1.0 / 3.0, 2.0), -1.0)

	assert start == StartingPotential(-1.0, 2.0)
	assert rest.family is Family.pure_power
	assert rest.terms == (PowerTerm(1.0 / 3.0, 1.0, 1),)

	spec = anharmonic(1.0, 1.0, 1.0)
	assert split_start(spec, -1.0) == (StartingPotential(-1.0), spec)
	single = pure_power(1.0, 1.0, 2.0)
	assert split_start(single, 2.0) == (StartingPotential(2.0), single)


def test_perturbative_energy():
	small = pure_power(0.5, 1.0, 1.0)
	start = StartingPotential(2.0, 1.0)
	sigma = 1e-4

	assert perturbative_energy(small, 0.0, start, 1.5) == pytest.approx(3.0)
	full = solve(scaled(small, sigma), start, 1.5).energy
	assert perturbative_energy(small, sigma, start, 1.5) == pytest.approx(full, abs=1e-7)

	with pytest.raises(DomainError):
		perturbative_energy(small, sigma, StartingPotential(2.0), 1.5)


@pytest.mark.parametrize("start, n_value", [(StartingPotential(2.0, 1.0), 1.5), (StartingPotential(-1.0, 4.0), 1.0)])
def test_perturbative_gap_is_quadratic(start, n_value):
	small = pure_power(0.5, 1.0, 1.0)
	sigmas = np.geomspace(1e-4, 1e-1, 7)
	gaps = [abs(solve(scaled(small, sigma), start, n_value).energy - perturbative_energy(small, sigma, start, n_value))
		for sigma in sigmas]

	slope, _ = np.polyfit(np.log(sigmas), np.log(gaps), 1)
	assert slope == pytest.approx(2.0, abs=0.1)


@pytest.mark.parametrize("family", list(STARTS))
def test_solve_follows_the_scaling_law(family):
	rng = np.random.default_rng(11)
	base = embed(ReducedProblem(family, 1.0))
	eta, n_value = STARTS[family]
	q = QuantumNumbers(1, 2)

	# G V(ar), out of the named family when G breaks its coefficient relation
	def spec(mass, strength, inverse_length):
		terms = tuple(term._replace(coefficient=strength * term.coefficient * inverse_length**term.exponent)
			for term in base.terms)
		return PotentialSpec(Family.two_power, terms, mass)

	for mass, strength, inverse_length in rng.uniform(0.2, 5.0, size=(100, 3)):
		g = reference_strength(mass, strength, inverse_length, base.mass)
		reference = solve_potential(spec(base.mass, g, 1.0), eta, n_value(q)).energy
		energy = solve_potential(spec(mass, strength, inverse_length), eta, n_value(q)).energy
		assert scale_energy(reference, mass, strength, inverse_length, base.mass) == pytest.approx(energy, rel=1e-10)


@pytest.mark.parametrize("spec, start, n_value", [
	(pure_power(0.5, 1.0, 1.0), StartingPotential(2.0), 1.5),
	(pure_power(1.0, 2.0, 2.0), StartingPotential(-1.0), 3.0),
	(pure_power(2.0, 0.5, 3.0), StartingPotential(1.0), 2.5),
	(pure_power(1.5, 1.0 / 3.0, 1.0), StartingPotential(-1.0, 2.0), 2.0),
])
def test_mean_point_balances_the_starting_field(spec, start, n_value):
	solution = solve(spec, start, n_value)

	# |η| (a + ν₀) J^(η+2) = N²/m
	balance = abs(start.eta) * (start.a + solution.nu0) * solution.mean_point**(start.eta + 2.0)
	assert balance == pytest.approx(n_value**2 / spec.mass, rel=1e-10)


def test_unconverged_field_is_rejected(monkeypatch):
	spec = embed(ReducedProblem(Family.anharmonic, 1.0))
	start, rest = split_start(spec, 2.0)

	def shifted(function, low, high, xtol):
		return brentq(function, low, high, xtol=xtol) + 1e-3

	monkeypatch.setattr(afm_engine, "brentq", shifted)
	with pytest.raises(ConvergenceError):
		solve(rest, start, 2.5, spec.mass)
