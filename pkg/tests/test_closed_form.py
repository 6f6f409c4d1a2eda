#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


from itertools import product
from math import pi, sqrt

from closed_form import (
	LINEAR_B, LINEAR_C, anharmonic_afm, anharmonic_afm_large_beta, anharmonic_afm_physical, anharmonic_afm_small_beta,
	cubic_root_F, funnel_afm, funnel_afm_large_beta, funnel_afm_physical, funnel_afm_sinh, funnel_afm_small_beta,
	kratzer_afm, kratzer_afm_n, kratzer_denominator_gap, kratzer_denominator_gap_limit, kratzer_exact,
	kratzer_optimal_field, quad_centrifugal_afm, quad_centrifugal_afm_physical, quad_centrifugal_afm_small_beta,
	quad_centrifugal_exact, quad_centrifugal_optimal_field, quad_coulomb_afm, quad_coulomb_afm_large_beta,
	quad_coulomb_afm_physical, quad_coulomb_afm_small_beta, quartic_root_Gminus, quartic_root_Gplus, reduced_afm_energy,
	reduced_exact_energy, resolvent_V,
)

from datatypes import Family, Formulation, QuantumNumbers, ReducedProblem

from errors import DomainError, FallingToCenterError

import pytest


# TESTS ###############################################################################################################


@pytest.mark.parametrize("y", [1e-6, 0.3, 1.0, 4.0, 250.0, 1e8])
def test_roots_solve_their_polynomials(y):
	f = cubic_root_F(y).value
	plus = quartic_root_Gplus(y).value
	minus = quartic_root_Gminus(y).value

	assert 0.0 < f and 0.0 < plus and 0.0 < minus
	assert f**3 + 3.0 * f == pytest.approx(2.0 * y, rel=1e-12)
	assert 4.0 * plus**4 + 8.0 * plus == pytest.approx(3.0 * y, rel=1e-12)
	assert 4.0 * minus**4 - 8.0 * minus == pytest.approx(3.0 * y, rel=1e-11, abs=1e-12)


def test_roots_at_the_boundary():
	assert cubic_root_F(0.0).value == 0.0
	assert quartic_root_Gplus(0.0).value == 0.0
	assert quartic_root_Gminus(0.0).value == pytest.approx(2.0**(1.0 / 3.0), rel=1e-12)

	with pytest.raises(DomainError):
		quartic_root_Gplus(-1e-3)
	with pytest.raises(DomainError):
		cubic_root_F(-1.0)


def test_cubic_root_diagnostics_report_a_small_residual():
	diagnostics = cubic_root_F(2.0)

	assert abs(diagnostics.residual) < 1e-12 * 3.0


@pytest.mark.parametrize("y", [0.0, 1e-3, 1.0, 2.0, 4.0, 1e3, 1e6])
def test_roots_pass_the_residual_gate(y):
	gate = 1e-12 * (1.0 + y)

	for root in (cubic_root_F, quartic_root_Gplus, quartic_root_Gminus):
		diagnostics = root(y)
		assert 0.0 <= diagnostics.value
		assert abs(diagnostics.residual) < gate


def test_root_anchors():
	assert cubic_root_F(2.0).value == pytest.approx(1.0, abs=1e-12)
	assert quartic_root_Gplus(4.0).value == pytest.approx(1.0, abs=1e-12)
	assert quartic_root_Gminus(0.0).value == pytest.approx(2.0**(1.0 / 3.0), abs=1e-12)
	assert resolvent_V(0.0) == pytest.approx(4.0**(1.0 / 3.0), abs=1e-12)


@pytest.mark.parametrize("n, l", [(0, 0), (1, 0), (0, 2), (3, 3)])
def test_kratzer_afm_is_below_the_exact_energy(n, l):  # noqa: E741
	q = QuantumNumbers(n, l)

	assert kratzer_afm(0.5, 1.0, q) == pytest.approx(-1.0 / (1.0 + (n + l + 1)**2))
	assert kratzer_afm(0.5, 1.0, q) <= kratzer_exact(0.5, 1.0, q)


def test_kratzer_exact_ground_state():
	assert kratzer_exact(0.5, 1.0, QuantumNumbers(0, 0)) == pytest.approx(-1.0 / (0.5 + sqrt(1.25))**2, rel=1e-14)


def test_kratzer_gap_tends_to_its_large_l_form():
	q = QuantumNumbers(2, 400)

	assert kratzer_denominator_gap(1.0, 0.7, q) == pytest.approx(kratzer_denominator_gap_limit(1.0, 0.7, q), rel=1e-3)
	assert kratzer_denominator_gap(1.0, 0.7, QuantumNumbers(0, 0)) < 0.0


def test_kratzer_optimal_field():
	assert kratzer_optimal_field(0.5, 1.0, 1.0) == pytest.approx(1.0)


@pytest.mark.parametrize("beta", [0.1, 1.0, 10.0])
def test_kratzer_denominator_gap_is_exact(beta):
	a = sqrt(beta)

	# −β/E is the denominator of both energies
	for n, l in product(range(6), range(6)):  # noqa: E741
		q = QuantumNumbers(n, l)
		gap = -beta / kratzer_afm(0.5, a, q) + beta / kratzer_exact(0.5, a, q)
		assert gap == pytest.approx(kratzer_denominator_gap(0.5, a, q), rel=1e-12, abs=1e-12)

	for n in range(3):
		q = QuantumNumbers(n, 100)
		assert kratzer_denominator_gap(0.5, a, q) == pytest.approx(kratzer_denominator_gap_limit(0.5, a, q), rel=1e-2)


def test_kratzer_afm_with_any_quantum_number_combination():
	assert kratzer_afm_n(0.5, 1.0, 2.5) == pytest.approx(-1.0 / (1.0 + 2.5**2))
	assert kratzer_afm_n(0.5, 1.0, 3.0) == kratzer_afm(0.5, 1.0, QuantumNumbers(1, 1))
	assert reduced_afm_energy(ReducedProblem(Family.kratzer, 0.7), QuantumNumbers(0, 0), 1.5) == pytest.approx(
		-0.7 / (0.7 + 1.5**2), rel=1e-14,
	)


@pytest.mark.parametrize("n, l", [(0, 0), (2, 1), (1, 3)])
def test_quad_centrifugal_afm_is_exact_for_the_oscillator(n, l):  # noqa: E741
	q = QuantumNumbers(n, l)

	assert quad_centrifugal_exact(0.0, 1, q) == pytest.approx(2.0 * (2 * n + l + 1.5))
	assert quad_centrifugal_afm(0.0, 1, 2 * n + l + 1.5) == pytest.approx(quad_centrifugal_exact(0.0, 1, q))


def test_quad_centrifugal_ground_state_is_three():
	assert reduced_afm_energy(ReducedProblem(Family.quad_centrifugal, 0.0), QuantumNumbers(0, 0), 1.5) == 3.0


def test_quad_centrifugal_falls_to_center():
	with pytest.raises(FallingToCenterError):
		quad_centrifugal_afm(3.0, -1, 1.5)
	with pytest.raises(FallingToCenterError):
		quad_centrifugal_exact(0.3, -1, QuantumNumbers(0, 0))


def test_quad_centrifugal_variants_agree():
	assert quad_centrifugal_afm_small_beta(1e-6, -1, 2.5) == pytest.approx(quad_centrifugal_afm(1e-6, -1, 2.5), rel=1e-12)
	assert quad_centrifugal_afm_physical(2.0, 3.0, 0.25, 1, 2.5) == pytest.approx(
		sqrt(3.0 / 4.0) * quad_centrifugal_afm(1.0, 1, 2.5),
	)
	assert quad_centrifugal_optimal_field(0.5, 1.0, 1.0, 1, 2.0) == pytest.approx(0.2)


def test_anharmonic_limits():
	assert anharmonic_afm(0.0, 2.5) == pytest.approx(sqrt(3.0) * 2.5)
	assert anharmonic_afm(1e-10, 2.5) == pytest.approx(anharmonic_afm_small_beta(1e-10, 2.5), rel=1e-8)
	assert anharmonic_afm(1e8, 2.5) == pytest.approx(anharmonic_afm_large_beta(1e8, 2.5), rel=1e-2)


def test_anharmonic_physical_matches_the_reduced_form():
	assert anharmonic_afm_physical(2.0, 3.0, 4.0 * sqrt(0.7), 3.5) == pytest.approx(anharmonic_afm(0.7, 3.5), rel=1e-10)
	assert anharmonic_afm_physical(1.0, 2.0, 0.0, 1.5) == pytest.approx(3.0)


@pytest.mark.parametrize("formulation", list(Formulation))
def test_quad_coulomb_limits(formulation):
	assert quad_coulomb_afm(1e-3, 1.5, formulation) == pytest.approx(
		quad_coulomb_afm_small_beta(1e-3, 1.5, formulation), rel=1e-3,
	)
	assert quad_coulomb_afm(1e3, 1.5, formulation) == pytest.approx(
		quad_coulomb_afm_large_beta(1e3, 1.5, formulation), rel=1e-2,
	)


def test_quad_coulomb_at_zero_beta():
	assert quad_coulomb_afm(0.0, 1.5) == pytest.approx(sqrt(3.0) * 1.5 / 4.0)
	assert quad_coulomb_afm(0.0, 1.0, Formulation.eta) == pytest.approx(-8.0 / 3.0)


def test_quad_coulomb_physical_matches_the_reduced_form():
	beta = 0.8
	assert quad_coulomb_afm_physical(8.0 / 3.0, 0.25, beta**1.5, 2.5) == pytest.approx(
		quad_coulomb_afm(beta, 2.5), rel=1e-10,
	)


@pytest.mark.parametrize("beta", [0.1, 0.5, 1.0, 2.0, 10.0])
def test_funnel_forms_agree(beta):
	assert funnel_afm_sinh(beta, 2.0) == pytest.approx(funnel_afm(beta, 2.0), rel=1e-12)
	assert funnel_afm_physical(1.5, 1.0 / 3.0, beta**(4.0 / 3.0), 2.0) == pytest.approx(funnel_afm(beta, 2.0), rel=1e-10)


def test_funnel_limits():
	assert funnel_afm(0.0, 2.0) == pytest.approx((4.0 / 4.0)**(1.0 / 3.0))
	assert funnel_afm(100.0, 2.0) == pytest.approx(funnel_afm_large_beta(100.0, 2.0), rel=1e-2)
	assert funnel_afm(0.0, 1.0, Formulation.eta) == pytest.approx(-3.0**(5.0 / 3.0) / 4.0)



@pytest.mark.parametrize("beta", [0.1, 0.5, 1.0, 2.0, 10.0])
@pytest.mark.parametrize("n_value", [1.0, 2.5])
def test_epsilon_and_eta_forms_are_dual(beta, n_value):
	eta_form = Formulation.eta

	assert quad_coulomb_afm(beta, n_value) == pytest.approx(
		beta**3 / 2.0 * quad_coulomb_afm(1.0 / beta, n_value, eta_form), rel=1e-12,
	)
	assert funnel_afm(beta, n_value) == pytest.approx(
		beta**(8.0 / 3.0) / 3.0**(2.0 / 3.0) * funnel_afm(1.0 / beta, n_value, eta_form), rel=1e-12,
	)


@pytest.mark.parametrize("exact, small, large, formulation", [
	(anharmonic_afm, anharmonic_afm_small_beta, anharmonic_afm_large_beta, None),
	(quad_coulomb_afm, quad_coulomb_afm_small_beta, quad_coulomb_afm_large_beta, Formulation.epsilon),
	(quad_coulomb_afm, quad_coulomb_afm_small_beta, quad_coulomb_afm_large_beta, Formulation.eta),
	(funnel_afm, funnel_afm_small_beta, funnel_afm_large_beta, Formulation.epsilon),
	(funnel_afm, funnel_afm_small_beta, funnel_afm_large_beta, Formulation.eta),
])
def test_asymptotic_forms(exact, small, large, formulation):
	extra = () if formulation is None else (formulation,)

	for n_value in (1.0, 1.5, 4.0):
		assert exact(1e-4, n_value, *extra) / small(1e-4, n_value, *extra) == pytest.approx(1.0, abs=1e-3)
		assert exact(1e4, n_value, *extra) / large(1e4, n_value, *extra) == pytest.approx(1.0, abs=1e-2)


def test_funnel_coulomb_line(reference):
	for row in reference("funnel_levels_beta0.5.csv"):
		q = QuantumNumbers(int(row["n"]), int(row["l"]))
		assert funnel_afm(0.5, q.n + q.l + 1.0) == pytest.approx(float(row["coulomb"]), abs=1e-5)


def test_funnel_set1_line(reference):
	b = 1.0 + (LINEAR_B - 1.0) * 2.718281828459045**(-0.416**2 * 0.25)
	c = 1.0 + (LINEAR_C - 1.0) * 2.718281828459045**(-1.245**2 * 0.25)

	for row in reference("funnel_levels_beta0.5.csv"):
		n, l = int(row["n"]), int(row["l"])  # noqa: E741
		assert funnel_afm(0.5, b * n + l + c) == pytest.approx(float(row["set1"]), abs=2e-4)


def test_linear_constants():
	assert LINEAR_B == pytest.approx(pi / sqrt(3.0))
	assert LINEAR_C == pytest.approx(1.3603495231756633)


def test_exact_dispatch():
	q = QuantumNumbers(1, 1)

	assert reduced_exact_energy(ReducedProblem(Family.kratzer, 1.0), q) == kratzer_exact(0.5, 1.0, q)
	with pytest.raises(DomainError):
		reduced_exact_energy(ReducedProblem(Family.funnel, 1.0), q)


@pytest.mark.parametrize("call", [
	lambda: anharmonic_afm(-1.0, 1.5),
	lambda: funnel_afm(1.0, 0.0),
	lambda: quad_coulomb_afm(float("nan"), 1.5),
	lambda: kratzer_afm(0.5, -1.0, QuantumNumbers(0, 0)),
])
def test_domain_errors(call):
	with pytest.raises(DomainError):
		call()
