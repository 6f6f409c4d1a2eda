#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Calibration of the quantum-number function N(β) = b(β) n + l + c(β) against numerical spectra.

The accuracy of a model at β is measured over a window of levels by

	χ(β) = (1/|window|) Σ (ε_num(β; n, l) − ε_app(β; n, l))²

the per-β optimal (b, c) minimize it, and a model d(β) is fitted to the optimal values by minimizing

	χ(d) = Σ_β (d_min(β) − d_fit(β))²
"""

# IMPORTS #############################################################################################################


import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from math import exp
from typing import Dict, List, Optional, Sequence, Tuple

from closed_form import LINEAR_B, LINEAR_C, reduced_afm_energy

from datatypes import (
	BetaMinimum, CoefficientConstraint, EigenTable, Family, FitReport, Formulation, ModelConstraints, ModelFit,
	ModelKind, NLevelModel, Parameters, Provenance, QuantumNumbers, ReducedProblem, SolverConfig, STANDARD_WINDOW,
	Table, TableSet, model_coefficient,
)

from errors import DomainError, FitFailedError, IncompleteTableError

import numpy as np

from scipy.optimize import least_squares, minimize

from spectral_solver import eigenvalues

from timed import timed_callable

from tqdm import tqdm


# CONSTANTS ###########################################################################################################


_MODULE = "calibration"

"""Families whose N(β) is calibrated, and the shape fitted by default."""
DEFAULT_KINDS: Dict[Family, ModelKind] = {
	Family.anharmonic: ModelKind.hyperbola,
	Family.quad_coulomb: ModelKind.exp_cubic,
	Family.funnel: ModelKind.gaussian,
}

"""The (b, c) of each family at β = 0, where its reduced Hamiltonian is a pure power."""
ANCHORS: Dict[Family, Tuple[float, float]] = {
	Family.anharmonic: (2.0, 1.5),
	Family.quad_coulomb: (2.0, 1.5),
	Family.funnel: (LINEAR_B, LINEAR_C),
}

DEFAULT_BETAS: Dict[Family, np.ndarray] = {
	Family.anharmonic: np.geomspace(0.01, 100.0, 15),
	Family.quad_coulomb: np.geomspace(0.1, 4.0, 15),
	Family.funnel: np.geomspace(0.1, 4.0, 15),
}

"""The β values and N choices of the χ(β) tables."""
CHI_BETAS: Dict[Family, Tuple[float, ...]] = {
	Family.anharmonic: (0.1, 1.0, 10.0),
	Family.quad_coulomb: (0.5, 1.0, 2.0),
	Family.funnel: (0.5, 1.0, 2.0),
}
CHI_MODELS: Dict[Family, Tuple[str, ...]] = {
	Family.anharmonic: ("ho", "set1", "set2"),
	Family.quad_coulomb: ("ho", "coulomb", "set1", "set2"),
	Family.funnel: ("coulomb", "set1", "set2"),
}

_CONSTANTS: Dict[str, Tuple[float, float]] = {
	"ho": (2.0, 1.5),
	"coulomb": (1.0, 1.0),
	"linear": (LINEAR_B, LINEAR_C),
}

_B_BOUNDS = (0.05, 6.0)


def _constant(b: float, c: float) -> NLevelModel:
	return NLevelModel(ModelKind.constant, (b, 0.0, 0.0), (c, 0.0, 0.0), None)


"""Set-1 constraints pin the large-β value (anharmonic) or the centre of the transition (the others), and β = 0."""
CONSTRAINT_SETS: Dict[Family, Dict[str, ModelConstraints]] = {
	Family.anharmonic: {
		"set1": ModelConstraints(
			CoefficientConstraint((LINEAR_B, None, None), 2.0),
			CoefficientConstraint((LINEAR_C, None, None), 1.5),
		),
		"set2": ModelConstraints(),
	},
	Family.quad_coulomb: {
		"set1": ModelConstraints(
			CoefficientConstraint((None, None, 0.0), 2.0),
			CoefficientConstraint((None, None, 0.0), 1.5),
		),
		"set2": ModelConstraints(),
	},
	Family.funnel: {
		"set1": ModelConstraints(
			CoefficientConstraint((None, None, 0.0), LINEAR_B),
			CoefficientConstraint((None, None, 0.0), LINEAR_C),
		),
		"set2": ModelConstraints(),
	},
}

"""The published parameter sets."""
REGISTRY: Dict[Family, Dict[str, NLevelModel]] = {
	Family.anharmonic: {
		"set1": NLevelModel(
			ModelKind.hyperbola,
			(LINEAR_B, 2.0 * 0.835, 0.835),
			(LINEAR_C, 1.5 * 0.445, 0.445),
			CONSTRAINT_SETS[Family.anharmonic]["set1"],
		),
		"set2": NLevelModel(ModelKind.hyperbola, (1.826, 1.485, 0.747), (1.381, 0.333, 0.222), ModelConstraints()),
	},
	Family.quad_coulomb: {
		"set1": NLevelModel(
			ModelKind.exp_cubic,
			(1.0, 0.093, 0.0),
			(0.5, 2.414, 0.0),
			CONSTRAINT_SETS[Family.quad_coulomb]["set1"],
		),
		"set2": NLevelModel(ModelKind.exp_cubic, (0.990, 0.119, 0.161), (0.496, 1.373, -0.136), ModelConstraints()),
	},
	Family.funnel: {
		"set1": NLevelModel(
			ModelKind.gaussian,
			(LINEAR_B - 1.0, 0.416, 0.0),
			(LINEAR_C - 1.0, 1.245, 0.0),
			CONSTRAINT_SETS[Family.funnel]["set1"],
		),
		"set2": NLevelModel(ModelKind.gaussian, (0.783, 0.459, 0.237), (0.369, 1.168, -0.062), ModelConstraints()),
	},
}

MODEL_NAMES = ("default", "ho", "coulomb", "linear", "set1", "set2")


# MODELS ##############################################################################################################


def named_model(family: Family, name: str, formulation: Formulation = Formulation.epsilon) -> NLevelModel:
	"""Returns a model of the registry.

	Parameters
	----------
	family : Family
		The family the model applies to.
	name : str
		`ho`, `coulomb` or `linear` for the N of a pure power, `set1` or `set2` for the published fits, `default` for
		the Coulomb N of the Kratzer family, the funnel and the η-forms, and the harmonic one otherwise.
	formulation : Formulation
		The reduction form the model is used with (default is `Formulation.epsilon`).

	Returns
	-------
	NLevelModel
		The model.
	"""

	if name == "default":
		coulombic = family in (Family.kratzer, Family.funnel) or formulation is Formulation.eta
		name = "coulomb" if coulombic else "ho"

	if name in _CONSTANTS:
		return _constant(*_CONSTANTS[name])
	if name not in ("set1", "set2"):
		raise DomainError("unknown model " + repr(name) + ", expected one of " + ", ".join(MODEL_NAMES), module=_MODULE)
	if family not in REGISTRY:
		raise DomainError("no published " + name + " model for the " + family.value + " family", module=_MODULE)
	if formulation is Formulation.eta:
		raise DomainError("the published models are written for the ε-form", module=_MODULE)

	return REGISTRY[family][name]


def validate_model(model: NLevelModel) -> NLevelModel:
	"""Checks that b(β) and c(β) stay positive for β >= 0, and that hyperbolae have no pole there."""

	if model.kind is ModelKind.hyperbola and (model.b_params[2] <= 0.0 or model.c_params[2] <= 0.0):
		raise DomainError("hyperbola models need p3 > 0 and q3 > 0", module=_MODULE)

	betas = np.concatenate(([0.0], np.geomspace(1e-3, 1e3, 61)))
	if not (np.all(model.b(betas) > 0.0) and np.all(model.c(betas) > 0.0)):
		raise DomainError("b(beta) and c(beta) must stay > 0 for beta >= 0", module=_MODULE)

	return model


# CHI #################################################################################################################


def approximate_energy(family: Family, beta: float, model: NLevelModel, q: QuantumNumbers) -> float:
	return reduced_afm_energy(ReducedProblem(family, beta), q, model.n_value(beta, q))


def chi_beta(
	beta: float,
	family: Family,
	model: NLevelModel,
	numeric: EigenTable,
	levels: Sequence[QuantumNumbers] = STANDARD_WINDOW,
) -> float:
	"""Computes the mean squared deviation χ(β) of the closed-form energies from numerical ones over a window.

	Parameters
	----------
	beta : float
		The ε-form parameter.
	family : Family
		The family.
	model : NLevelModel
		The quantum-number model of the closed forms.
	numeric : EigenTable
		The numerical eigenvalues, holding every level of the window at this β.
	levels : Sequence[QuantumNumbers]
		The window (default is `STANDARD_WINDOW`, n and l in 0..3).

	Returns
	-------
	float
		χ(β)

	Raises
	------
	IncompleteTableError
		If a level of the window is missing from the numerical table.
	"""

	residuals = []
	for q in levels:
		entry = numeric.entry(beta, q.n, q.l)
		if entry is None:
			raise IncompleteTableError(
				"no numeric eigenvalue for beta=" + str(beta) + ", n=" + str(q.n) + ", l=" + str(q.l),
				module=_MODULE,
			)
		residuals.append(entry.energy - approximate_energy(family, beta, model, q))

	return float(np.mean(np.square(residuals)))


def minimize_bc(
	beta: float,
	family: Family,
	numeric: EigenTable,
	levels: Sequence[QuantumNumbers] = STANDARD_WINDOW,
) -> BetaMinimum:
	"""Finds the constant (b, c) minimizing χ(β), by a bounded Powell descent from the β = 0 anchor restarted once.

	Raises
	------
	FitFailedError
		If neither descent converges.
	"""

	def chi(point: np.ndarray) -> float:
		return chi_beta(beta, family, _constant(*point), numeric, levels)

	anchor = np.array(ANCHORS.get(family, _CONSTANTS["ho"]))
	best_point, best_chi, converged = anchor, chi(anchor), False

	for _ in range(2):
		result = minimize(
			chi,
			best_point,
			method="Powell",
			bounds=[_B_BOUNDS, _B_BOUNDS],
			options={"xtol": 1e-10, "ftol": 1e-15, "maxiter": 20000},
		)
		converged = converged or result.success
		if result.fun <= best_chi:
			best_point, best_chi = result.x, float(result.fun)

	if not converged:
		raise FitFailedError("the (b, c) descent did not converge at beta=" + str(beta), module=_MODULE)

	b_min, c_min = (float(value) for value in best_point)
	logging.debug("beta=" + format(beta, ".4g") + ": b=" + format(b_min, ".6f") + ", c=" + format(c_min, ".6f"))

	return BetaMinimum(beta, b_min, c_min, best_chi)


# FITS ################################################################################################################


def _tied_index(kind: ModelKind) -> int:
	return 1 if kind is ModelKind.hyperbola else 0


def _tie(kind: ModelKind, params: List[float], anchor: float) -> None:
	"""Solves d(0) = anchor for the tied parameter."""

	p1, p2, p3 = params
	if kind is ModelKind.constant:
		params[0] = anchor
	elif kind is ModelKind.hyperbola:
		params[1] = anchor * p3
	elif kind is ModelKind.exp_cubic:
		params[0] = (anchor - 1.0) * exp(-p2 * p3**3)
	else:
		params[0] = (anchor - 1.0) * exp(p2 * p2 * p3 * p3)


def _initial(kind: ModelKind, values: np.ndarray) -> List[float]:
	first, last = float(values[0]), float(values[-1])
	if kind is ModelKind.constant:
		return [float(np.mean(values)), 0.0, 0.0]
	if kind is ModelKind.hyperbola:
		return [last, first, 1.0]

	return [first - 1.0, 0.5, 0.0]


def _fit_coefficient(
	betas: np.ndarray,
	values: np.ndarray,
	kind: ModelKind,
	constraint: CoefficientConstraint,
	initial: Optional[Parameters],
) -> Tuple[Parameters, float]:
	fixed = list(constraint.fixed)
	if kind is ModelKind.constant:
		fixed[1:] = [0.0 if value is None else value for value in fixed[1:]]

	tied = _tied_index(kind) if constraint.anchor is not None else None
	if tied is not None and fixed[tied] is not None:
		raise FitFailedError("parameter " + str(tied + 1) + " is both fixed and tied to the anchor", module=_MODULE)

	free = [index for index in range(3) if fixed[index] is None and index != tied]
	if len(values) < 4 or len(values) < len(free):
		raise FitFailedError(
			str(len(free)) + " free parameters cannot be fitted on " + str(len(values)) + " samples",
			module=_MODULE,
		)

	start = list(initial) if initial is not None else _initial(kind, values)

	def assemble(vector: Sequence[float]) -> List[float]:
		params = [value if value is not None else start[index] for index, value in enumerate(fixed)]
		for index, value in zip(free, vector):
			params[index] = value
		if tied is not None:
			_tie(kind, params, constraint.anchor)
		return params

	def residuals(vector: np.ndarray) -> np.ndarray:
		return np.asarray(model_coefficient(kind, assemble(vector), betas)) - values

	if free:
		lower = [1e-12 if kind is ModelKind.hyperbola and index == 2 else -np.inf for index in free]
		result = least_squares(
			residuals,
			[start[index] for index in free],
			bounds=(lower, [np.inf] * len(free)),
			method="trf",
			xtol=1e-15,
			ftol=1e-15,
			gtol=1e-15,
			max_nfev=20000,
			x_scale="jac",
		)
		if not result.success:
			raise FitFailedError("least squares did not converge: " + result.message, module=_MODULE)
		vector = result.x
	else:
		vector = []

	params = assemble(vector)
	if kind is ModelKind.gaussian:
		params[1] = abs(params[1])

	return (params[0], params[1], params[2]), float(np.sum(np.square(residuals(vector))))


def fit_model(
	minima: Sequence[BetaMinimum],
	kind: ModelKind,
	constraints: ModelConstraints = ModelConstraints(),
	initial: Optional[NLevelModel] = None,
) -> ModelFit:
	"""Fits b(β) and c(β) to per-β optimal values, minimizing χ(d) for each coefficient.

	Parameters
	----------
	minima : Sequence[BetaMinimum]
		The samples, at least four and no fewer than the free parameters.
	kind : ModelKind
		The shape of both coefficients.
	constraints : ModelConstraints
		Pinned parameters and β = 0 anchors (default is no constraint).
	initial : Optional[NLevelModel]
		The starting parameters, of the same kind (default is a guess from the samples).

	Returns
	-------
	ModelFit
		The model and the χ(d) of both coefficients.

	Raises
	------
	FitFailedError
		If the constraints leave the fit underdetermined or inconsistent, or the least squares fail.
	"""

	ordered = sorted(minima, key=lambda item: item.beta)
	betas = np.array([item.beta for item in ordered])
	if initial is not None and initial.kind is not kind:
		initial = None

	b_params, chi_d_b = _fit_coefficient(
		betas, np.array([item.b_min for item in ordered]), kind, constraints.b, None if initial is None else initial.b_params,
	)
	c_params, chi_d_c = _fit_coefficient(
		betas, np.array([item.c_min for item in ordered]), kind, constraints.c, None if initial is None else initial.c_params,
	)

	return ModelFit(NLevelModel(kind, b_params, c_params, constraints), chi_d_b, chi_d_c)


# PIPELINES ###########################################################################################################


def _calibrated(family: Family) -> None:
	if family not in DEFAULT_KINDS:
		raise DomainError("the " + family.value + " family has no N(beta) calibration", module=_MODULE)


def numeric_table(
	family: Family,
	beta: float,
	cfg: SolverConfig,
	levels: Sequence[QuantumNumbers] = STANDARD_WINDOW,
) -> EigenTable:
	return eigenvalues(ReducedProblem(family, float(beta)), levels, cfg)


def numeric_tables(
	family: Family,
	betas: Sequence[float],
	cfg: SolverConfig,
	jobs: int = 1,
	levels: Sequence[QuantumNumbers] = STANDARD_WINDOW,
) -> EigenTable:
	"""Solves every β of a list concurrently, and merges the tables."""

	merged = EigenTable.empty(Provenance.numeric)
	with ThreadPoolExecutor(max_workers=jobs) as executor, tqdm(total=len(betas), desc="numeric", disable=None) as pbar:
		futures = [executor.submit(numeric_table, family, beta, cfg, levels) for beta in betas]
		for future in as_completed(futures):
			merged.merge(future.result())
			pbar.update()

	return merged


def _numeric_for(
	family: Family,
	betas: Sequence[float],
	cfg: SolverConfig,
	jobs: int,
	numeric: Optional[EigenTable],
	levels: Sequence[QuantumNumbers],
) -> EigenTable:
	"""Completes a numerical table with the β it lacks."""

	table = EigenTable.empty(Provenance.numeric)
	if numeric is not None:
		table.merge(numeric)

	missing = [beta for beta in betas if any(table.entry(beta, q.n, q.l) is None for q in levels)]
	if missing:
		table.merge(numeric_tables(family, missing, cfg, jobs, levels))

	return table


@timed_callable("Calibrating N(beta)...")
def calibrate(
	family: Family,
	kind: Optional[ModelKind] = None,
	constraints: str = "set2",
	betas: Optional[Sequence[float]] = None,
	cfg: Optional[SolverConfig] = None,
	jobs: int = 1,
	numeric: Optional[EigenTable] = None,
	levels: Sequence[QuantumNumbers] = STANDARD_WINDOW,
) -> FitReport:
	"""Finds the optimal (b, c) on a β grid, then fits a model to them.

	Parameters
	----------
	family : Family
		An anharmonic, quadratic+Coulomb or funnel family.
	kind : Optional[ModelKind]
		The fitted shape (default is the family's published shape).
	constraints : str
		`set1` or `set2` (default is `set2`, no constraint).
	betas : Optional[Sequence[float]]
		The β grid (default is 15 geometric points over the family's transition region).
	cfg : Optional[SolverConfig]
		The eigensolver configuration (default is `SolverConfig.default()`).
	jobs : int
		The number of worker threads (default is 1).
	numeric : Optional[EigenTable]
		Precomputed numerical eigenvalues; missing β are solved.
	levels : Sequence[QuantumNumbers]
		The window of χ (default is `STANDARD_WINDOW`).

	Returns
	-------
	FitReport
		The per-β minima, the fitted model and its χ(d).
	"""

	_calibrated(family)
	kind = DEFAULT_KINDS[family] if kind is None else kind
	if constraints not in CONSTRAINT_SETS[family]:
		raise DomainError("unknown constraint set " + repr(constraints), module=_MODULE)

	betas = sorted(float(beta) for beta in (DEFAULT_BETAS[family] if betas is None else betas))
	cfg = SolverConfig.default() if cfg is None else cfg
	table = _numeric_for(family, betas, cfg, jobs, numeric, levels)

	with ThreadPoolExecutor(max_workers=jobs) as executor, tqdm(total=len(betas), desc="minima", disable=None) as pbar:
		futures = [executor.submit(minimize_bc, beta, family, table, levels) for beta in betas]
		minima = []
		for future in as_completed(futures):
			minima.append(future.result())
			pbar.update()

	minima.sort(key=lambda item: item.beta)
	initial = REGISTRY[family].get(constraints)
	fit = fit_model(minima, kind, CONSTRAINT_SETS[family][constraints], initial)

	return FitReport(family, minima, fit.model, fit.chi_d_b, fit.chi_d_c)


def _parameter_row(name: str, model: NLevelModel) -> List[object]:
	return [name] + list(model.b_params) + list(model.c_params)


def _funnel_levels_table(numeric: EigenTable, beta: float, levels: Sequence[QuantumNumbers]) -> Table:
	"""Three lines per l (numerical, set 1, Coulomb N), one column per n."""

	n_values = sorted({q.n for q in levels})
	l_values = sorted({q.l for q in levels})
	lines = (
		("num", None),
		("set1", named_model(Family.funnel, "set1")),
		("coulomb", named_model(Family.funnel, "coulomb")),
	)
	rows = []

	for l in l_values:  # noqa: E741
		for line, model in lines:
			row = [l, line]
			for n in n_values:
				q = QuantumNumbers(n, l)
				if model is None:
					entry = numeric.entry(beta, n, l)
					if entry is None:
						raise IncompleteTableError("no numeric eigenvalue for " + str(q), module=_MODULE)
					row.append(entry.energy)
				else:
					row.append(approximate_energy(Family.funnel, beta, model, q))
			rows.append(row)

	return Table(
		"funnel eigenvalues (beta=" + format(beta, "g") + ")",
		["l", "line"] + ["n=" + str(n) for n in n_values],
		rows,
	)


@timed_callable("Reproducing the calibration tables...")
def reproduce_tables(
	family: Family,
	cfg: Optional[SolverConfig] = None,
	jobs: int = 1,
	refit: bool = False,
	numeric: Optional[EigenTable] = None,
) -> TableSet:
	"""Emits the parameter table and the χ(β) table of a family, plus the eigenvalue table of the funnel at β = 0.5.

	Parameters
	----------
	family : Family
		An anharmonic, quadratic+Coulomb or funnel family.
	cfg : Optional[SolverConfig]
		The eigensolver configuration (default is `SolverConfig.default()`).
	jobs : int
		The number of worker threads (default is 1).
	refit : bool
		Appends freshly fitted parameter rows and their χ(β) columns (default is False).
	numeric : Optional[EigenTable]
		Precomputed numerical eigenvalues; missing β are solved.

	Returns
	-------
	TableSet
		The tables, in the order parameters, χ(β), eigenvalues.
	"""

	_calibrated(family)
	cfg = SolverConfig.default() if cfg is None else cfg
	table = _numeric_for(family, CHI_BETAS[family], cfg, jobs, numeric, STANDARD_WINDOW)

	models = [(name, named_model(family, name)) for name in CHI_MODELS[family]]
	parameters = [_parameter_row("Set 1", REGISTRY[family]["set1"]), _parameter_row("Set 2", REGISTRY[family]["set2"])]

	if refit:
		table = _numeric_for(family, DEFAULT_BETAS[family], cfg, jobs, table, STANDARD_WINDOW)
		for index, name in enumerate(("set1", "set2"), start=1):
			report = calibrate(family, constraints=name, cfg=cfg, jobs=jobs, numeric=table)
			parameters.append(_parameter_row("Refit " + str(index), report.fitted_params))
			models.append(("refit" + str(index), report.fitted_params))

	tables = [
		Table(
			"parameters (" + family.value + ", " + DEFAULT_KINDS[family].value + ")",
			["set", "p1", "p2", "p3", "q1", "q2", "q3"],
			parameters,
		),
		Table(
			"chi(beta) (" + family.value + ")",
			["beta"] + [name for name, _ in models],
			[[beta] + [chi_beta(beta, family, model, table) for _, model in models] for beta in CHI_BETAS[family]],
		),
	]
	if family is Family.funnel:
		tables.append(_funnel_levels_table(table, 0.5, STANDARD_WINDOW))

	return TableSet("calibration tables (" + family.value + ")", tables)
