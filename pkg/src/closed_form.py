#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Closed-form auxiliary field energies of the reduced Hamiltonians

	Kratzer					p²/2m + a²/r² − 2a/r
	quadratic+centrifugal	p² + r² ± β/r²
	anharmonic				p²/4 + 3r² + 8√β r
	quadratic+Coulomb		3p²/16 + r²/4 − β^{3/2}/r					(ε-form)
							3p²/16 − √2/r + β′⁶ r²						(η-form)
	funnel					p²/3 + r/3 − β^{4/3}/r						(ε-form)
							p²/3 − 3^{1/3}/r + β′⁴ r					(η-form)

and the positive roots F and G± of x³ + 3x − 2Y = 0 and 4x⁴ ± 8x − 3Y = 0 they are written with.
"""

# IMPORTS #############################################################################################################


from math import asinh, hypot, isfinite, pi, sinh, sqrt
from typing import Callable

from datatypes import Family, Formulation, NValue, QuantumNumbers, ReducedProblem, RootDiagnostics

from errors import DomainError, FallingToCenterError

import numpy as np


# CONSTANTS ###########################################################################################################


_MODULE = "closed_form"
_NEWTON_STEPS = 3

"""The b and c coefficients of N for a pure linear potential."""
LINEAR_B = pi / sqrt(3.0)
LINEAR_C = sqrt(3.0) * pi / 4.0


# FUNCTIONS ###########################################################################################################


def _cbrt(x: float) -> float:
	return float(np.cbrt(x))


def _require(condition: bool, message: str) -> None:
	if not condition:
		raise DomainError(message, module=_MODULE)


def _check_y(y: float) -> None:
	_require(isfinite(y) and 0.0 <= y, "Y must be >= 0, got " + str(y))


def _check_beta(beta: float) -> None:
	_require(isfinite(beta) and 0.0 <= beta, "beta must be >= 0, got " + str(beta))


def _check_n(n_value: NValue) -> None:
	_require(isfinite(n_value) and 0.0 < n_value, "N must be > 0, got " + str(n_value))


def _polished(
	x: float,
	y: float,
	polynomial: Callable[[float], float],
	slope: Callable[[float], float],
) -> RootDiagnostics:
	"""Returns the root with its residual, refining it by Newton steps only when the residual gate fails."""

	gate = 1e-12 * (1.0 + abs(y))
	residual = polynomial(x)

	for _ in range(_NEWTON_STEPS):
		if abs(residual) < gate:
			break
		candidate = x - residual / slope(x)
		candidate_residual = polynomial(candidate)
		if abs(residual) <= abs(candidate_residual):
			break
		x, residual = candidate, candidate_residual

	return RootDiagnostics(x, residual)


def cubic_root_F(y: float) -> RootDiagnostics:  # noqa: N802
	"""Computes the positive root F(Y) of x³ + 3x − 2Y = 0.

	Parameters
	----------
	y : float
		The right-hand side Y, nonnegative.

	Returns
	-------
	RootDiagnostics
		F(Y) = [Y + √(1+Y²)]^{1/3} − [Y + √(1+Y²)]^{-1/3} and the cubic evaluated there.
	"""

	_check_y(y)
	if y == 0.0:
		return RootDiagnostics(0.0, 0.0)

	# s − 1/s rewritten as (s³ − s⁻³)/(s² + 1 + s⁻²), with s³ − s⁻³ = 2Y
	square = _cbrt(y + hypot(1.0, y))**2

	return _polished(
		2.0 * y / (square + 1.0 + 1.0 / square),
		y,
		lambda x: x * (x * x + 3.0) - 2.0 * y,
		lambda x: 3.0 * x * x + 3.0,
	)


def resolvent_V(y: float) -> float:  # noqa: N802
	"""Computes V(Y) = (2 + √(4+Y³))^{1/3} − Y (2 + √(4+Y³))^{-1/3}, the positive root of V³ + 3YV − 4 = 0.

	The difference of the printed form is rewritten as 4s²/(s⁴ + s²Y + Y²) with s³ = 2 + √(4+Y³), which never
	subtracts close numbers.
	"""

	_check_y(y)
	s2 = _cbrt(2.0 + sqrt(4.0 + y**3))**2

	return 4.0 * s2 / (s2 * s2 + s2 * y + y * y)


def _quartic_surds(y: float) -> tuple:
	v = resolvent_V(y)
	root_v = sqrt(v)

	return v, root_v, sqrt(4.0 / root_v - v)


def quartic_root_Gplus(y: float) -> RootDiagnostics:  # noqa: N802
	"""Computes the nonnegative root G₊(Y) of 4x⁴ + 8x − 3Y = 0.

	Parameters
	----------
	y : float
		The right-hand side Y, nonnegative.

	Returns
	-------
	RootDiagnostics
		G₊(Y) = −√V/2 + √(4/√V − V)/2, zero at Y = 0, and the quartic evaluated there.
	"""

	_check_y(y)
	v, root_v, root_w = _quartic_surds(y)

	# (√W − √V)/2 rationalized with 4 − V³ = 3YV
	root = 3.0 * y * root_v / ((2.0 + v * root_v) * (root_w + root_v))

	return _polished(root, y, lambda x: 4.0 * x**4 + 8.0 * x - 3.0 * y, lambda x: 16.0 * x**3 + 8.0)


def quartic_root_Gminus(y: float) -> RootDiagnostics:  # noqa: N802
	"""Computes the positive root G₋(Y) = √V/2 + √(4/√V − V)/2 of 4x⁴ − 8x − 3Y = 0, with Y nonnegative."""

	_check_y(y)
	_, root_v, root_w = _quartic_surds(y)

	return _polished(
		0.5 * (root_v + root_w),
		y,
		lambda x: 4.0 * x**4 - 8.0 * x - 3.0 * y,
		lambda x: 16.0 * x**3 - 8.0,
	)


# KRATZER #############################################################################################################


def _check_kratzer(mass: float, a: float, q: QuantumNumbers) -> float:
	_require(0.0 < mass and 0.0 < a, "mass and a must be > 0")
	_require(0 <= q.n and 0 <= q.l, "quantum numbers must be >= 0")

	return 2.0 * mass * a * a


def kratzer_exact(mass: float, a: float, q: QuantumNumbers) -> float:
	"""Exact eigenvalue of p²/2m + a²/r² − 2a/r: −2ma² / [n + 1/2 + √((l+1/2)² + 2ma²)]²."""

	beta = _check_kratzer(mass, a, q)
	return -beta / (q.n + 0.5 + sqrt((q.l + 0.5)**2 + beta))**2


def kratzer_afm(mass: float, a: float, q: QuantumNumbers) -> float:
	"""Auxiliary field eigenvalue of p²/2m + a²/r² − 2a/r: −2ma² / [2ma² + (n+l+1)²]."""

	_check_kratzer(mass, a, q)
	return kratzer_afm_n(mass, a, q.n + q.l + 1.0)


def kratzer_afm_n(mass: float, a: float, n_value: NValue) -> float:
	"""Auxiliary field eigenvalue −2ma² / (2ma² + N²) of the Kratzer potential for any quantum-number sum N."""

	_require(0.0 < mass and 0.0 < a, "mass and a must be > 0")
	_check_n(n_value)
	beta = 2.0 * mass * a * a

	return -beta / (beta + n_value**2)


def kratzer_denominator_gap(mass: float, a: float, q: QuantumNumbers) -> float:
	"""Difference δ = (2n+1)(l+1/2)[1 − √(1 + 2ma²/(l+1/2)²)] of the auxiliary field and exact denominators."""

	beta = _check_kratzer(mass, a, q)
	half = q.l + 0.5
	x = beta / half**2

	return -(2 * q.n + 1) * half * x / (1.0 + sqrt(1.0 + x))


def kratzer_denominator_gap_limit(mass: float, a: float, q: QuantumNumbers) -> float:
	"""Large-l form −(2n+1) m a² / (l+1/2) of the denominator gap."""

	_check_kratzer(mass, a, q)
	return -(2 * q.n + 1) * mass * a * a / (q.l + 0.5)


def kratzer_optimal_field(mass: float, a: float, n_value: NValue) -> float:
	"""Optimal field 4ma³ / (2ma² + N²), counted from the −2a/r coupling."""

	_require(0.0 < mass and 0.0 < a, "mass and a must be > 0")
	_check_n(n_value)

	return 4.0 * mass * a**3 / (2.0 * mass * a * a + n_value**2)


# QUADRATIC + CENTRIFUGAL #############################################################################################


def _check_sign(sign: int) -> None:
	_require(sign in (1, -1), "sign must be +1 or -1, got " + str(sign))


def quad_centrifugal_exact(beta: float, sign: int, q: QuantumNumbers) -> float:
	"""Exact eigenvalue 2(2n+1) + √((2l+1)² ± 4β) of p² + r² ± β/r²."""

	_check_beta(beta)
	_check_sign(sign)
	argument = (2 * q.l + 1)**2 + 4.0 * sign * beta
	if argument <= 0.0:
		raise FallingToCenterError("(2l+1)² − 4β <= 0 for l=" + str(q.l) + ", beta=" + str(beta), module=_MODULE)

	return 2.0 * (2 * q.n + 1) + sqrt(argument)


def quad_centrifugal_afm(beta: float, sign: int, n_value: NValue) -> float:
	"""Auxiliary field eigenvalue 2√(N² ± β) of p² + r² ± β/r²."""

	_check_beta(beta)
	_check_sign(sign)
	_check_n(n_value)
	argument = n_value**2 + sign * beta
	if argument <= 0.0:
		raise FallingToCenterError("N² − β <= 0 for N=" + str(n_value) + ", beta=" + str(beta), module=_MODULE)

	return 2.0 * sqrt(argument)


def quad_centrifugal_afm_small_beta(beta: float, sign: int, n_value: NValue) -> float:
	"""First order 2N ± β/N of the auxiliary field eigenvalue for small β."""

	_check_sign(sign)
	_check_n(n_value)
	return 2.0 * n_value + sign * beta / n_value


def quad_centrifugal_afm_physical(mass: float, a: float, b: float, sign: int, n_value: NValue) -> float:
	"""Auxiliary field eigenvalue of p²/2m + ar² ± b/r²."""

	_require(0.0 < mass and 0.0 < a and 0.0 <= b, "mass and a must be > 0, b >= 0")
	return sqrt(a / (2.0 * mass)) * quad_centrifugal_afm(2.0 * mass * b, sign, n_value)


def quad_centrifugal_optimal_field(mass: float, a: float, b: float, sign: int, n_value: NValue) -> float:
	"""Optimal field aY/(1 ± Y) with Y = 2mb/N², counted from the r² coupling."""

	_require(0.0 < mass and 0.0 < a and 0.0 <= b, "mass and a must be > 0, b >= 0")
	_check_sign(sign)
	_check_n(n_value)
	y = 2.0 * mass * b / n_value**2
	if 1.0 + sign * y <= 0.0:
		raise FallingToCenterError("N² − 2mb <= 0", module=_MODULE)

	return a * y / (1.0 + sign * y)


# ANHARMONIC ##########################################################################################################


def anharmonic_afm(beta: float, n_value: NValue) -> float:
	"""Auxiliary field eigenvalue 2βY(G₋² + 1/G₋) of p²/4 + 3r² + 8√β r, with Y = (N/β)^{2/3}.

	Parameters
	----------
	beta : float
		The dimensionless parameter; `0` returns the harmonic value √3 N.
	n_value : NValue
		The quantum-number combination.

	Returns
	-------
	float
		The reduced energy ε.
	"""

	_check_beta(beta)
	_check_n(n_value)
	if beta == 0.0:
		return sqrt(3.0) * n_value

	y = (n_value / beta)**(2.0 / 3.0)
	root = quartic_root_Gminus(y).value

	return 2.0 * beta * y * (root * root + 1.0 / root)


def anharmonic_afm_small_beta(beta: float, n_value: NValue) -> float:
	_check_beta(beta)
	return sqrt(3.0) * n_value + 4.0 * sqrt(2.0 * beta * n_value / sqrt(3.0))


def anharmonic_afm_large_beta(beta: float, n_value: NValue) -> float:
	_check_beta(beta)
	return 3.0 * _cbrt(4.0 * beta * n_value**2)


def anharmonic_afm_physical(mass: float, a: float, b: float, n_value: NValue) -> float:
	"""Auxiliary field eigenvalue of p²/2m + ar² + 2br.

	The optimal field is ν₀ = k G₋(Y) with k = (mb⁴/N²)^{1/3} and Y = (8a/3)(N²/(mb⁴))^{1/3}, and the energy
	√(2/m) N √(a + ν₀) + b²/ν₀.
	"""

	_require(0.0 < mass and 0.0 < a and 0.0 <= b, "mass and a must be > 0, b >= 0")
	_check_n(n_value)
	if b == 0.0:
		return sqrt(2.0 * a / mass) * n_value

	k = _cbrt(mass * b**4 / n_value**2)
	nu0 = k * quartic_root_Gminus(8.0 * a / (3.0 * k)).value

	return sqrt(2.0 / mass) * n_value * sqrt(a + nu0) + b * b / nu0


# QUADRATIC + COULOMB #################################################################################################


def _check_formulation(formulation: Formulation) -> None:
	_require(isinstance(formulation, Formulation), "unknown formulation " + str(formulation))


def _quad_coulomb_bracket(y: float) -> float:
	root = quartic_root_Gplus(y).value
	return y / root**2 - 4.0 / root


def quad_coulomb_afm(beta: float, n_value: NValue, formulation: Formulation = Formulation.epsilon) -> float:
	"""Auxiliary field eigenvalue of the reduced quadratic+Coulomb Hamiltonian.

	Parameters
	----------
	beta : float
		β for the ε-form, β′ for the η-form.
	n_value : NValue
		The quantum-number combination.
	formulation : Formulation
		The ε-form (3β/8)[Y/G₊² − 4/G₊] with Y = (N/β)², or the η-form (3β′²/4)[...] with Y = (Nβ′)²
		(default is `Formulation.epsilon`).

	Returns
	-------
	float
		The reduced energy.
	"""

	_check_beta(beta)
	_check_n(n_value)
	_check_formulation(formulation)

	if formulation is Formulation.epsilon:
		if beta == 0.0:
			return sqrt(3.0) * n_value / 4.0
		return 3.0 * beta / 8.0 * _quad_coulomb_bracket((n_value / beta)**2)

	if beta == 0.0:
		return -8.0 / (3.0 * n_value**2)
	return 3.0 * beta * beta / 4.0 * _quad_coulomb_bracket((n_value * beta)**2)


def quad_coulomb_afm_small_beta(beta: float, n_value: NValue, formulation: Formulation = Formulation.epsilon) -> float:
	_check_beta(beta)
	if formulation is Formulation.epsilon:
		return sqrt(3.0) * n_value / 4.0 - sqrt(2.0 * beta**3 / (n_value * sqrt(3.0)))

	return -8.0 / (3.0 * n_value**2) + 9.0 * beta**6 * n_value**4 / 128.0


def quad_coulomb_afm_large_beta(beta: float, n_value: NValue, formulation: Formulation = Formulation.epsilon) -> float:
	_check_beta(beta)
	if formulation is Formulation.epsilon:
		return -4.0 * beta**3 / (3.0 * n_value**2)

	return sqrt(3.0) / 2.0 * beta**3 * n_value


def quad_coulomb_afm_physical(mass: float, a: float, b: float, n_value: NValue) -> float:
	"""Auxiliary field eigenvalue of p²/2m + ar² − b/r.

	The energy √(2/m) N √(a+ν) − 3(b²ν/4)^{1/3} is stationary at ν₀ = 2a / G₊(Y)³ with
	Y = (8N²/3m)(4a/b⁴)^{1/3}.
	"""

	_require(0.0 < mass and 0.0 < a and 0.0 < b, "mass, a and b must be > 0")
	_check_n(n_value)
	y = 8.0 * n_value**2 / (3.0 * mass) * _cbrt(4.0 * a / b**4)
	nu0 = 2.0 * a / quartic_root_Gplus(y).value**3

	return sqrt(2.0 / mass) * n_value * sqrt(a + nu0) - 3.0 * _cbrt(b * b * nu0 / 4.0)


# FUNNEL ##############################################################################################################


def _funnel_bracket(y: float) -> float:
	root = cubic_root_F(y).value
	return y / root**2 - 2.0 / root


def funnel_afm(beta: float, n_value: NValue, formulation: Formulation = Formulation.epsilon) -> float:
	"""Auxiliary field eigenvalue of the reduced funnel Hamiltonian.

	Parameters
	----------
	beta : float
		β for the ε-form, β′ for the η-form.
	n_value : NValue
		The quantum-number combination.
	formulation : Formulation
		The ε-form β^{2/3}[Y/F² − 2/F] with Y = (N/β)², or the η-form 3^{2/3}β′²[...] with Y = (Nβ′)²
		(default is `Formulation.epsilon`).

	Returns
	-------
	float
		The reduced energy.
	"""

	_check_beta(beta)
	_check_n(n_value)
	_check_formulation(formulation)

	if formulation is Formulation.epsilon:
		if beta == 0.0:
			return _cbrt(n_value**2 / 4.0)
		return _cbrt(beta * beta) * _funnel_bracket((n_value / beta)**2)

	if beta == 0.0:
		return -3.0**(5.0 / 3.0) / (4.0 * n_value**2)
	return 3.0**(2.0 / 3.0) * beta * beta * _funnel_bracket((n_value * beta)**2)


def funnel_afm_sinh(beta: float, n_value: NValue) -> float:
	"""ε-form funnel eigenvalue β^{2/3}[sinh θ − 1/(4 sinh θ)] with Y = (N/β)² = sinh 3θ."""

	_check_beta(beta)
	_check_n(n_value)
	if beta == 0.0:
		return _cbrt(n_value**2 / 4.0)

	s = sinh(asinh((n_value / beta)**2) / 3.0)

	return _cbrt(beta * beta) * (s - 1.0 / (4.0 * s))


def funnel_afm_small_beta(beta: float, n_value: NValue, formulation: Formulation = Formulation.epsilon) -> float:
	_check_beta(beta)
	if formulation is Formulation.epsilon:
		return _cbrt(n_value**2 / 4.0) - _cbrt(beta**4 / (2.0 * n_value**2))

	return -3.0**(5.0 / 3.0) / (4.0 * n_value**2) + 2.0 * n_value**2 * beta**4 / 3.0**(4.0 / 3.0)


def funnel_afm_large_beta(beta: float, n_value: NValue, formulation: Formulation = Formulation.epsilon) -> float:
	_check_beta(beta)
	if formulation is Formulation.epsilon:
		return -3.0 * beta**(8.0 / 3.0) / (4.0 * n_value**2)

	return (1.5 * beta**4 * n_value)**(2.0 / 3.0)


def funnel_afm_physical(mass: float, a: float, b: float, n_value: NValue) -> float:
	"""Auxiliary field eigenvalue √(3ab)[Y/F² − 2/F] of p²/2m + ar − b/r, with Y = (3/2) N² √(3a/(m²b³))."""

	_require(0.0 < mass and 0.0 < a and 0.0 < b, "mass, a and b must be > 0")
	_check_n(n_value)

	return sqrt(3.0 * a * b) * _funnel_bracket(1.5 * n_value**2 * sqrt(3.0 * a / (mass**2 * b**3)))


# DISPATCH ############################################################################################################


def reduced_afm_energy(problem: ReducedProblem, q: QuantumNumbers, n_value: NValue) -> float:
	"""Closed-form auxiliary field energy of a reduced problem.

	Parameters
	----------
	problem : ReducedProblem
		The reduced Hamiltonian.
	q : QuantumNumbers
		The level, which every family sees through `n_value`.
	n_value : NValue
		The quantum-number combination.

	Returns
	-------
	float
		The reduced energy.
	"""

	if problem.family is Family.kratzer:
		return kratzer_afm_n(0.5, sqrt(problem.beta), n_value)
	if problem.family is Family.quad_centrifugal:
		return quad_centrifugal_afm(problem.beta, problem.sign, n_value)
	if problem.family is Family.anharmonic:
		return anharmonic_afm(problem.beta, n_value)
	if problem.family is Family.quad_coulomb:
		return quad_coulomb_afm(problem.beta, n_value, problem.formulation)
	if problem.family is Family.funnel:
		return funnel_afm(problem.beta, n_value, problem.formulation)

	raise DomainError("no closed form for the " + problem.family.value + " family", module=_MODULE)


def reduced_exact_energy(problem: ReducedProblem, q: QuantumNumbers) -> float:
	"""Exact energy of the reduced problems that have one (Kratzer and quadratic+centrifugal)."""

	if problem.family is Family.kratzer:
		return kratzer_exact(0.5, sqrt(problem.beta), q)
	if problem.family is Family.quad_centrifugal:
		return quad_centrifugal_exact(problem.beta, problem.sign, q)

	raise DomainError("no exact closed form for the " + problem.family.value + " family", module=_MODULE)
