#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Potential families, their reduced one-parameter forms and the scaling law of the energies.

The named families, with V written from the physical parameters (m, a, b):

	kratzer				a²/r² − 2a/r
	quad-centrifugal	ar² ± b/r²
	anharmonic			ar² + 2br
	quad-coulomb		ar² − b/r
	funnel				ar − b/r

Other families of the literature solvable the same way (starting powers −2/3, −1/2, −5/2...) are not provided.
"""

# IMPORTS #############################################################################################################


from json import JSONDecodeError, dumps, loads
from math import isclose, isfinite, sqrt
from typing import Any, Callable, Dict, Optional, Tuple, Union

from datatypes import Family, Formulation, PotentialSpec, PowerTerm, ReducedProblem

from errors import DomainError, FallingToCenterError, InvalidPotentialError, UnsupportedReductionError

import numpy as np


# CONSTANTS ###########################################################################################################


_MODULE = "potentials"

"""For each named family, the admissible terms as (exponent, allowed signs), the confining one first."""
_SIGNATURES: Dict[Family, Tuple[Tuple[float, Tuple[int, ...]], ...]] = {
	Family.kratzer: ((-2.0, (1,)), (-1.0, (-1,))),
	Family.quad_centrifugal: ((2.0, (1,)), (-2.0, (1, -1))),
	Family.anharmonic: ((2.0, (1,)), (1.0, (1,))),
	Family.quad_coulomb: ((2.0, (1,)), (-1.0, (-1,))),
	Family.funnel: ((1.0, (1,)), (-1.0, (-1,))),
}

"""Families where a term of exponent −2 may appear."""
_CENTRIFUGAL_FAMILIES = frozenset((Family.kratzer, Family.quad_centrifugal, Family.pure_power, Family.two_power))

_ETA_FAMILIES = frozenset((Family.quad_coulomb, Family.funnel))

Radius = Union[float, np.ndarray]


# FACTORIES ###########################################################################################################


def _term(coefficient: float, exponent: float, sign: int) -> Tuple[PowerTerm, ...]:
	return (PowerTerm(float(coefficient), float(exponent), sign),) if coefficient != 0.0 else ()


def _named(family: Family, mass: float, *terms: PowerTerm) -> PotentialSpec:
	return validate(PotentialSpec(family, tuple(terms), float(mass)))


def pure_power(mass: float, coefficient: float, exponent: float, sign: Optional[int] = None) -> PotentialSpec:
	"""Builds `sign * coefficient * r**exponent`, the sign defaulting to the sign of the exponent."""

	if sign is None:
		sign = 1 if 0.0 < exponent else -1

	return _named(Family.pure_power, mass, PowerTerm(float(coefficient), float(exponent), sign))


def two_power(mass: float, first: PowerTerm, second: PowerTerm) -> PotentialSpec:
	return _named(Family.two_power, mass, first, second)


def kratzer(mass: float, a: float) -> PotentialSpec:
	return _named(Family.kratzer, mass, PowerTerm(a * a, -2.0, 1), PowerTerm(2.0 * a, -1.0, -1))


def quad_centrifugal(mass: float, a: float, b: float, sign: int = 1) -> PotentialSpec:
	return _named(Family.quad_centrifugal, mass, *_term(a, 2.0, 1), *_term(b, -2.0, sign))


def anharmonic(mass: float, a: float, b: float) -> PotentialSpec:
	"""Builds `ar² + 2br`."""

	return _named(Family.anharmonic, mass, *_term(a, 2.0, 1), *_term(2.0 * b, 1.0, 1))


def quad_coulomb(mass: float, a: float, b: float) -> PotentialSpec:
	return _named(Family.quad_coulomb, mass, *_term(a, 2.0, 1), *_term(b, -1.0, -1))


def funnel(mass: float, a: float, b: float) -> PotentialSpec:
	return _named(Family.funnel, mass, *_term(a, 1.0, 1), *_term(b, -1.0, -1))


# VALIDATION ##########################################################################################################


def _invalid(message: str) -> InvalidPotentialError:
	return InvalidPotentialError(message, module=_MODULE)


def _validate_term(term: PowerTerm, family: Family) -> None:
	if not (isfinite(term.coefficient) and 0.0 < term.coefficient):
		raise _invalid("term coefficients must be finite and > 0, got " + str(term.coefficient))
	if term.sign not in (1, -1):
		raise _invalid("term signs must be +1 or -1, got " + str(term.sign))
	if not isfinite(term.exponent) or term.exponent == 0.0:
		raise _invalid("term exponents must be finite and nonzero, got " + str(term.exponent))
	if term.exponent < -2.0 or (term.exponent == -2.0 and family not in _CENTRIFUGAL_FAMILIES):
		raise _invalid("exponent " + str(term.exponent) + " is not allowed for the " + family.value + " family")


def _validate_signature(spec: PotentialSpec) -> None:
	signature = _SIGNATURES[spec.family]
	seen = set()

	for term in spec.terms:
		matches = [
			index for index, (exponent, signs) in enumerate(signature)
			if term.exponent == exponent and term.sign in signs
		]
		if not matches or matches[0] in seen:
			raise _invalid(str(term) + " does not belong to the " + spec.family.value + " family")
		seen.add(matches[0])

	if spec.family is Family.kratzer:
		if len(spec.terms) != 2:
			raise _invalid("a Kratzer potential needs both its terms")
		if not isclose(coefficient(spec, -1.0), 2.0 * sqrt(coefficient(spec, -2.0)), rel_tol=1e-12):
			raise _invalid("Kratzer coefficients must read a² and 2a")


def validate(spec: PotentialSpec) -> PotentialSpec:
	"""Checks the invariants of a potential, and returns it.

	Parameters
	----------
	spec : PotentialSpec
		The potential to check.

	Returns
	-------
	PotentialSpec
		The same potential.

	Raises
	------
	InvalidPotentialError
		If the mass is not positive, a term is malformed, or the terms do not match the family.
	"""

	if not isinstance(spec.family, Family):
		raise _invalid("unknown family " + str(spec.family))
	if not (isfinite(spec.mass) and 0.0 < spec.mass):
		raise _invalid("the mass must be finite and > 0, got " + str(spec.mass))
	if not 1 <= len(spec.terms) <= 2:
		raise _invalid("a potential holds one or two terms, got " + str(len(spec.terms)))

	for term in spec.terms:
		_validate_term(term, spec.family)

	if spec.family is Family.pure_power and len(spec.terms) != 1:
		raise _invalid("a pure power holds exactly one term")
	if spec.family is Family.two_power:
		if len(spec.terms) != 2 or spec.terms[0].exponent == spec.terms[1].exponent:
			raise _invalid("a two-power potential holds two terms of distinct exponents")
	if spec.family in _SIGNATURES:
		_validate_signature(spec)

	return spec


# EVALUATION ##########################################################################################################


def coefficient(spec: PotentialSpec, exponent: float) -> float:
	"""Returns the coefficient of the term of the given exponent, `0` when absent."""

	return next((term.coefficient for term in spec.terms if term.exponent == exponent), 0.0)


def _radius(r: Radius) -> np.ndarray:
	radius = np.asarray(r, dtype=float)
	if np.any(radius <= 0.0) or not np.all(np.isfinite(radius)):
		raise DomainError("the radius must be finite and > 0", module=_MODULE)

	return radius


def _scalar(value: np.ndarray, r: Radius) -> Radius:
	return float(value) if np.ndim(r) == 0 else value


def evaluate(spec: PotentialSpec, r: Radius) -> Radius:
	"""Evaluates V(r) = Σ sign·coefficient·r^exponent, on a scalar or an array of radii."""

	radius = _radius(r)
	return _scalar(sum(term.sign * term.coefficient * np.power(radius, term.exponent) for term in spec.terms), r)


def derivative(spec: PotentialSpec, r: Radius) -> Radius:
	radius = _radius(r)
	return _scalar(sum(
		term.sign * term.coefficient * term.exponent * np.power(radius, term.exponent - 1.0) for term in spec.terms
	), r)


def scaled(spec: PotentialSpec, factor: float) -> PotentialSpec:
	"""Multiplies the potential by a nonzero real factor; a negative factor flips the signs of the terms."""

	if not isfinite(factor) or factor == 0.0:
		raise DomainError("the scaling factor must be finite and nonzero", module=_MODULE)

	direction = 1 if 0.0 < factor else -1
	terms = tuple(PowerTerm(term.coefficient * abs(factor), term.exponent, term.sign * direction) for term in spec.terms)

	return PotentialSpec(Family.pure_power if len(terms) == 1 else Family.two_power, terms, spec.mass)


def is_coulombic(spec: PotentialSpec) -> bool:
	"""Tells whether V tends to a constant at large r, i.e. no term grows with the radius."""

	return max(term.exponent for term in spec.terms) <= 0.0


def physical_parameters(spec: PotentialSpec) -> Tuple[float, float, float]:
	"""Returns (m, a, b) of a named family, b being `0` for Kratzer potentials and absent terms.

	The anharmonic `b` is half the coefficient of the linear term, and the quadratic+centrifugal `b` carries no sign.
	"""

	if spec.family not in _SIGNATURES:
		raise UnsupportedReductionError("the " + spec.family.value + " family has no physical parameters", module=_MODULE)

	(first, _), (second, _) = _SIGNATURES[spec.family]
	if spec.family is Family.kratzer:
		return spec.mass, sqrt(coefficient(spec, -2.0)), 0.0
	if spec.family is Family.anharmonic:
		return spec.mass, coefficient(spec, first), coefficient(spec, second) / 2.0

	return spec.mass, coefficient(spec, first), coefficient(spec, second)


# REDUCTIONS ##########################################################################################################


def _centrifugal_sign(spec: PotentialSpec) -> int:
	return next((term.sign for term in spec.terms if term.exponent == -2.0), 1)


def _require_confinement(a: float, family: Family) -> None:
	if a <= 0.0:
		raise DomainError("the confining term of the " + family.value + " potential is absent", module=_MODULE)


def _require_coulomb(b: float, family: Family) -> None:
	if b <= 0.0:
		raise DomainError("the Coulomb term of the " + family.value + " potential is absent", module=_MODULE)


def reduce(spec: PotentialSpec, formulation: Formulation = Formulation.epsilon) -> Tuple[ReducedProblem, float]:
	"""Reduces a named potential to its one-parameter dimensionless form.

	Parameters
	----------
	spec : PotentialSpec
		A potential of a named family.
	formulation : Formulation
		The ε-form, or the η-form for quadratic+Coulomb and funnel potentials (default is `Formulation.epsilon`).

	Returns
	-------
	Tuple[ReducedProblem, float]
		The reduced problem and the energy scale, such that `E(m, a, b; n, l) = scale * ε(β; n, l)`.

	Raises
	------
	UnsupportedReductionError
		If the family, or the family and formulation pair, has no reduction.
	FallingToCenterError
		If an attractive 1/r² term is too strong for any state to be bound.
	"""

	validate(spec)
	family = spec.family
	if family not in _SIGNATURES:
		raise UnsupportedReductionError("the " + family.value + " family has no reduced form", module=_MODULE)
	if formulation is Formulation.eta and family not in _ETA_FAMILIES:
		raise UnsupportedReductionError("the " + family.value + " family has no η-form", module=_MODULE)

	m, a, b = physical_parameters(spec)

	if family is Family.kratzer:
		return ReducedProblem(family, 2.0 * m * a * a), 1.0

	if family is Family.quad_centrifugal:
		_require_confinement(a, family)
		sign = _centrifugal_sign(spec)
		beta = 2.0 * m * b
		if sign < 0 and 1.0 - 4.0 * beta <= 0.0:
			raise FallingToCenterError("attractive 1/r² with 2mb >= 1/4 has no bound state", module=_MODULE)
		return ReducedProblem(family, beta, sign=sign), sqrt(a / (2.0 * m))

	if family is Family.anharmonic:
		_require_confinement(a, family)
		return ReducedProblem(family, 3.0 * b * b / 16.0 * sqrt(3.0 * m / (2.0 * a**3))), sqrt(2.0 * a / (3.0 * m))

	if family is Family.quad_coulomb:
		if formulation is Formulation.epsilon:
			_require_confinement(a, family)
			return (
				ReducedProblem(family, (54.0 * m**3 * b**4 / a)**(1.0 / 6.0) / 4.0),
				4.0 * sqrt(2.0 * a / (3.0 * m)),
			)
		_require_coulomb(b, family)
		beta = 4.0 * (a / (54.0 * m**3 * b**4))**(1.0 / 6.0)
		return ReducedProblem(family, beta, Formulation.eta), 3.0 * m * b * b / 16.0

	if formulation is Formulation.epsilon:
		_require_confinement(a, family)
		return ReducedProblem(family, (4.0 * m * m * b**3 / (27.0 * a))**0.25), 3.0 * float(np.cbrt(a * a / (2.0 * m)))

	_require_coulomb(b, family)
	beta = (27.0 * a / (4.0 * m * m * b**3))**0.25
	return ReducedProblem(family, beta, Formulation.eta), 2.0 * m * b * b / 3.0**(5.0 / 3.0)


def embed(reduced: ReducedProblem) -> PotentialSpec:
	"""Writes the reduced Hamiltonian of a problem as a potential, its energy scale being `1`.

	Parameters
	----------
	reduced : ReducedProblem
		The reduced problem.

	Returns
	-------
	PotentialSpec
		The potential whose reduction gives back the problem.
	"""

	beta, family = reduced.beta, reduced.family
	if not (isfinite(beta) and 0.0 <= beta):
		raise DomainError("beta must be finite and >= 0, got " + str(beta), module=_MODULE)
	if family not in _SIGNATURES:
		raise UnsupportedReductionError("the " + family.value + " family has no reduced form", module=_MODULE)
	if reduced.formulation is Formulation.eta and family not in _ETA_FAMILIES:
		raise UnsupportedReductionError("the " + family.value + " family has no η-form", module=_MODULE)

	if family is Family.kratzer:
		if beta == 0.0:
			raise DomainError("a Kratzer problem needs beta > 0", module=_MODULE)
		return kratzer(0.5, sqrt(beta))
	if family is Family.quad_centrifugal:
		return quad_centrifugal(0.5, 1.0, beta, reduced.sign)
	if family is Family.anharmonic:
		return anharmonic(2.0, 3.0, 4.0 * sqrt(beta))

	eta_form = reduced.formulation is Formulation.eta
	if family is Family.quad_coulomb:
		return quad_coulomb(8.0 / 3.0, beta**6, sqrt(2.0)) if eta_form else quad_coulomb(8.0 / 3.0, 0.25, beta**1.5)

	return funnel(1.5, beta**4, 3.0**(1.0 / 3.0)) if eta_form else funnel(1.5, 1.0 / 3.0, beta**(4.0 / 3.0))


def _scale_factor(mass: float, inverse_length: float, reference_mass: float) -> float:
	if min(mass, inverse_length, reference_mass) <= 0.0:
		raise DomainError("masses and inverse lengths must be > 0", module=_MODULE)

	return reference_mass * inverse_length**2 / mass


def reference_strength(mass: float, strength: float, inverse_length: float, reference_mass: float) -> float:
	"""Intensity mG/(m′a²) of the reference problem of p²/2m + G V(ar), of mass m′ and inverse length 1."""

	return strength / _scale_factor(mass, inverse_length, reference_mass)


def scale_energy(
	reference: float,
	mass: float,
	strength: float,
	inverse_length: float,
	reference_mass: float,
) -> float:
	"""Applies the scaling law E(m, G, a) = (m′a²/m) E(m′, mG/(m′a²), 1) of the spectrum of p²/2m + G V(ar).

	Parameters
	----------
	reference : float
		The energy E(m′, mG/(m′a²), 1) of the reference problem, see `reference_strength`.
	mass : float
		The mass m.
	strength : float
		The intensity G.
	inverse_length : float
		The characteristic inverse length a.
	reference_mass : float
		The mass m′ of the reference problem.

	Returns
	-------
	float
		The energy E(m, G, a).

	Raises
	------
	DomainError
		If a mass or the inverse length is not positive, or G is not finite.
	"""

	if not isfinite(strength):
		raise DomainError("the intensity must be finite, got " + str(strength), module=_MODULE)

	return _scale_factor(mass, inverse_length, reference_mass) * reference


def scale_energy_function(
	energy: Callable[[float, float], float],
	mass: float,
	strength: float,
	inverse_length: float,
	reference_mass: float,
) -> float:
	"""Same as `scale_energy`, the reference energy being computed by `energy(m′, G′)`."""

	reference = energy(reference_mass, reference_strength(mass, strength, inverse_length, reference_mass))
	return scale_energy(reference, mass, strength, inverse_length, reference_mass)


# SERIALIZATION #######################################################################################################


def to_json(spec: PotentialSpec) -> str:
	return dumps({
		"family": spec.family.value,
		"terms": [{"coeff": term.coefficient, "exp": term.exponent, "sign": term.sign} for term in spec.terms],
		"mass": spec.mass,
	}, sort_keys=True)


def from_json(text: Union[str, Dict[str, Any]]) -> PotentialSpec:
	"""Reads a potential from its JSON object `{"family", "terms": [{"coeff", "exp", "sign"}], "mass"}`."""

	try:
		data = loads(text) if isinstance(text, str) else text
		spec = PotentialSpec(
			Family(data["family"]),
			tuple(PowerTerm(float(term["coeff"]), float(term["exp"]), int(term["sign"])) for term in data["terms"]),
			float(data["mass"]),
		)
	except (JSONDecodeError, KeyError, TypeError, ValueError) as error:
		raise _invalid("malformed potential description: " + str(error)) from error

	return validate(spec)
