#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


from enum import Enum, unique
from json import JSONEncoder
from math import inf, isclose
from pathlib import Path
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from recordclass import RecordClass


# ENUMERATIONS ########################################################################################################


@unique
class Family(Enum):
	"""The potential families known to the package. Values are the CLI keywords."""

	pure_power = "pure-power"
	two_power = "two-power"
	kratzer = "kratzer"
	quad_centrifugal = "quad-centrifugal"
	anharmonic = "anharmonic"
	quad_coulomb = "quad-coulomb"
	funnel = "funnel"


@unique
class Formulation(Enum):
	"""Which term of a two-parameter Hamiltonian carries the dimensionless parameter after reduction."""

	epsilon = "eps"
	eta = "eta"


@unique
class Provenance(Enum):
	numeric = "numeric"
	afm_closed_form = "afm-closed-form"
	afm_generic = "afm-generic"


@unique
class ModelKind(Enum):
	"""Functional shapes available for the b(β) and c(β) coefficients of N(β)."""

	constant = "constant"
	hyperbola = "hyperbola"
	exp_cubic = "exp-cubic"
	gaussian = "gaussian"


@unique
class Command(Enum):
	spectrum = "spectrum"
	afm = "afm"
	compare = "compare"
	fit = "fit"
	tables = "tables"


# POTENTIALS ##########################################################################################################


class PowerTerm(NamedTuple):
	"""One power-law piece `sign * coefficient * r**exponent` of a potential.

	Attributes
	----------
	coefficient : float
		The strength of the term, strictly positive.
	exponent : float
		The power λ of the radius.
	sign : int
		The overall sign of the term, `+1` or `-1`. Stored explicitly so that repulsive 1/r² pieces can be written.
	"""

	coefficient: float
	exponent: float
	sign: int


class PotentialSpec(NamedTuple):
	"""A radial Hamiltonian `p²/2m + V(r)` with `V` a sum of one or two power terms.

	Attributes
	----------
	family : Family
		The family the terms belong to.
	terms : Tuple[PowerTerm, ...]
		One or two power terms.
	mass : float
		The reduced mass `m` of the kinetic part.
	"""

	family: Family
	terms: Tuple[PowerTerm, ...]
	mass: float


class ReducedProblem(NamedTuple):
	"""A dimensionless Hamiltonian controlled by a single parameter.

	Attributes
	----------
	family : Family
		One of the five named families.
	beta : float
		The dimensionless parameter (β for the ε-form, β′ for the η-form), nonnegative.
	formulation : Formulation
		The ε-form or, for quad+Coulomb and funnel only, the η-form.
	sign : int
		The sign of the β-carrying 1/r² term, only meaningful for the quadratic+centrifugal family (default is `+1`).
	"""

	family: Family
	beta: float
	formulation: Formulation = Formulation.epsilon
	sign: int = 1


class QuantumNumbers(NamedTuple):
	"""A radial and orbital quantum number pair, both nonnegative."""

	n: int
	l: int  # noqa: E741


"""A positive real number standing for the quantum-number combination entering the starting spectrum."""
NValue = float


# AUXILIARY FIELD #####################################################################################################


class StartingPotential(NamedTuple):
	"""The solvable part `a * sgn(η) * r**η` of `H_a = p²/2m + a P(r) + V(r)`.

	Attributes
	----------
	eta : float
		The power of the starting potential, nonzero and above -2.
	a : float
		The coefficient of the starting potential, `0` for the plain method (default is `0.0`).
	"""

	eta: float
	a: float = 0.0


class AfmSolution(NamedTuple):
	"""The outcome of an auxiliary field computation.

	Attributes
	----------
	nu0 : float
		The optimal auxiliary field.
	mean_point : float
		The mean point `J(ν₀)`.
	energy : float
		The approximate eigenenergy `E(ν₀)`.
	stationarity_residual : float
		The magnitude of `dE/dν` at `ν₀`.
	"""

	nu0: float
	mean_point: float
	energy: float
	stationarity_residual: float


class RootDiagnostics(NamedTuple):
	"""A positive polynomial root and the polynomial evaluated there."""

	value: float
	residual: float


# SPECTRA #############################################################################################################


class SolverConfig(RecordClass):
	"""Parameters of the finite-difference eigensolver.

	Attributes
	----------
	mesh_size : int
		The number of interior points of the coarsest mesh, at least 64.
	domain_cutoff : Optional[float]
		The box radius `r_max`; `None` lets the solver pick it from the classical turning point.
	richardson : bool
		Extrapolates over three nested meshes when set.
	min_cutoff : float
		The smallest box radius the heuristic may pick.
	"""

	mesh_size: int
	domain_cutoff: Optional[float]
	richardson: bool
	min_cutoff: float

	@classmethod
	def default(cls: type, mesh_size: int = 8000) -> "SolverConfig":
		return cls(mesh_size, None, True, 20.0)


class EigenEntry(NamedTuple):
	"""One row of an eigenvalue table; the fields are the CSV columns, in order."""

	family: str
	beta: Optional[float]
	formulation: str
	n: int
	l: int  # noqa: E741
	energy: float
	provenance: str
	accuracy: float


EIGEN_COLUMNS: Tuple[str, ...] = EigenEntry._fields


def _beta_key(beta: Optional[float]) -> float:
	return -inf if beta is None else beta


class Table(RecordClass):
	"""A titled grid of values, the unit every formatter knows how to print.

	Attributes
	----------
	title : str
		The title of the table.
	columns : List[str]
		The column names.
	rows : List[List[Any]]
		The rows, each holding one value per column.
	"""

	title: str
	columns: List[str]
	rows: List[List[Any]]

	def tables(self: "Table") -> List["Table"]:
		return [self]

	def to_dict(self: "Table") -> Dict[str, Any]:
		return {"title": self.title, "columns": list(self.columns), "rows": [list(row) for row in self.rows]}


class TableSet(RecordClass):
	"""An ordered collection of tables sharing a title."""

	title: str
	items: List[Table]

	def tables(self: "TableSet") -> List[Table]:
		return list(self.items)

	def to_dict(self: "TableSet") -> Dict[str, Any]:
		return {"title": self.title, "tables": [table.to_dict() for table in self.items]}


class EigenTable(RecordClass):
	"""Eigenvalues indexed by (β, n, l), all with the same provenance.

	Attributes
	----------
	provenance : Provenance
		Where the energies come from.
	entries : Dict[Tuple[Optional[float], int, int], EigenEntry]
		The rows, keyed by (β, n, l).
	"""

	provenance: Provenance
	entries: Dict[Tuple[Optional[float], int, int], EigenEntry]

	@classmethod
	def empty(cls: type, provenance: Provenance) -> "EigenTable":
		return cls(provenance, {})

	def add(self: "EigenTable", entry: EigenEntry) -> None:
		self.entries[(entry.beta, entry.n, entry.l)] = entry

	def merge(self: "EigenTable", other: "EigenTable") -> None:
		for entry in other.rows():
			self.add(entry)

	def entry(self: "EigenTable", beta: Optional[float], n: int, l: int) -> Optional[EigenEntry]:  # noqa: E741
		"""Looks a row up, matching β to 1e-12 relative when it is not found verbatim."""

		found = self.entries.get((beta, n, l))
		if found is not None or beta is None:
			return found

		return next((
			entry for (key_beta, key_n, key_l), entry in self.entries.items()
			if key_n == n and key_l == l and key_beta is not None and isclose(key_beta, beta, rel_tol=1e-12)
		), None)

	def rows(self: "EigenTable") -> List[EigenEntry]:
		return sorted(self.entries.values(), key=lambda e: (e.family, _beta_key(e.beta), e.formulation, e.n, e.l))

	def betas(self: "EigenTable") -> List[Optional[float]]:
		return sorted({entry.beta for entry in self.entries.values()}, key=_beta_key)

	def tables(self: "EigenTable") -> List[Table]:
		return [Table("eigenvalues", list(EIGEN_COLUMNS), [list(entry) for entry in self.rows()])]

	def to_dict(self: "EigenTable") -> Dict[str, Any]:
		return {"provenance": self.provenance.value, "entries": [entry._asdict() for entry in self.rows()]}


# CALIBRATION #########################################################################################################


"""Three parameters (p₁, p₂, p₃) of a coefficient model."""
Parameters = Tuple[float, float, float]


def model_coefficient(kind: ModelKind, params: Sequence[float], beta: Union[float, np.ndarray]) -> Any:
	"""Evaluates one coefficient `d(β)` (either `b` or `c`) of a quantum-number model.

	Parameters
	----------
	kind : ModelKind
		The functional shape.
	params : Sequence[float]
		The parameters (p₁, p₂, p₃).
	beta : Union[float, np.ndarray]
		The dimensionless parameter, scalar or array.

	Returns
	-------
	Union[float, np.ndarray]
		`p₁` for a constant, `(p₁β + p₂)/(β + p₃)` for a hyperbola,
		`1 + p₁ exp(-p₂ (β - p₃)³)` for an exp-cubic,
		`1 + p₁ exp(-p₂² (β - p₃)²)` for a gaussian.
	"""

	p1, p2, p3 = params
	if kind is ModelKind.constant:
		return p1 + 0.0 * beta
	if kind is ModelKind.hyperbola:
		return (p1 * beta + p2) / (beta + p3)
	if kind is ModelKind.exp_cubic:
		return 1.0 + p1 * np.exp(-p2 * (beta - p3)**3)

	return 1.0 + p1 * np.exp(-p2**2 * (beta - p3)**2)


class CoefficientConstraint(NamedTuple):
	"""Constraints on the three parameters of one coefficient.

	Attributes
	----------
	fixed : Tuple[Optional[float], Optional[float], Optional[float]]
		A value for each pinned parameter, `None` for free ones.
	anchor : Optional[float]
		The pinned value of the coefficient at β = 0, which ties one parameter to the others.
	"""

	fixed: Tuple[Optional[float], Optional[float], Optional[float]] = (None, None, None)
	anchor: Optional[float] = None


class ModelConstraints(NamedTuple):
	b: CoefficientConstraint = CoefficientConstraint()
	c: CoefficientConstraint = CoefficientConstraint()


class NLevelModel(RecordClass):
	"""The quantum-number function `N(β) = b(β) n + l + c(β)`.

	Attributes
	----------
	kind : ModelKind
		The shape shared by `b` and `c`.
	b_params : Parameters
		The parameters (p₁, p₂, p₃) of `b`.
	c_params : Parameters
		The parameters (q₁, q₂, q₃) of `c`.
	constraints : Optional[ModelConstraints]
		The constraints the parameters were fitted under, if any.
	"""

	kind: ModelKind
	b_params: Parameters
	c_params: Parameters
	constraints: Optional[ModelConstraints]

	def b(self: "NLevelModel", beta: float) -> float:
		return model_coefficient(self.kind, self.b_params, beta)

	def c(self: "NLevelModel", beta: float) -> float:
		return model_coefficient(self.kind, self.c_params, beta)

	def n_value(self: "NLevelModel", beta: float, q: QuantumNumbers) -> NValue:
		return self.b(beta) * q.n + q.l + self.c(beta)

	def to_dict(self: "NLevelModel") -> Dict[str, Any]:
		return {
			"kind": self.kind.value,
			"b_params": list(self.b_params),
			"c_params": list(self.c_params),
			"constraints": None if self.constraints is None else {
				name: {"fixed": list(constraint.fixed), "anchor": constraint.anchor}
				for name, constraint in self.constraints._asdict().items()
			},
		}


class BetaMinimum(NamedTuple):
	"""The (b, c) pair minimizing χ at a given β, and the minimum reached."""

	beta: float
	b_min: float
	c_min: float
	chi_min: float


class ModelFit(NamedTuple):
	"""A fitted quantum-number model with the residual sums of both coefficients."""

	model: NLevelModel
	chi_d_b: float
	chi_d_c: float


class FitReport(RecordClass):
	"""The outcome of a calibration run.

	Attributes
	----------
	family : Family
		The calibrated family.
	per_beta_minima : List[BetaMinimum]
		The optimal (b, c) at each sampled β.
	fitted_params : NLevelModel
		The model fitted to the minima.
	chi_d_b : float
		The fit residual sum of the `b` coefficient.
	chi_d_c : float
		The fit residual sum of the `c` coefficient.
	"""

	family: Family
	per_beta_minima: List[BetaMinimum]
	fitted_params: NLevelModel
	chi_d_b: float
	chi_d_c: float

	def tables(self: "FitReport") -> List[Table]:
		model = self.fitted_params
		names = ("1", "2", "3")

		return [
			Table(
				"fitted parameters (" + self.family.value + ", " + model.kind.value + ")",
				["coefficient"] + ["param_" + name for name in names] + ["chi_d"],
				[
					["b"] + list(model.b_params) + [self.chi_d_b],
					["c"] + list(model.c_params) + [self.chi_d_c],
				],
			),
			Table(
				"per-beta minima and fitted curves",
				["beta", "b_min", "c_min", "chi_min", "b_fit", "c_fit"],
				[
					[item.beta, item.b_min, item.c_min, item.chi_min, model.b(item.beta), model.c(item.beta)]
					for item in self.per_beta_minima
				],
			),
		]

	def to_dict(self: "FitReport") -> Dict[str, Any]:
		return {
			"family": self.family.value,
			"per_beta_minima": [item._asdict() for item in self.per_beta_minima],
			"fitted_params": self.fitted_params.to_dict(),
			"chi_d_b": self.chi_d_b,
			"chi_d_c": self.chi_d_c,
		}


# RUNS ################################################################################################################


class RunConfig(RecordClass):
	"""A validated command-line run.

	Attributes
	----------
	command : Command
		The subcommand.
	family : Family
		The potential family.
	beta : Optional[float]
		The dimensionless parameter; exclusive with the physical parameters.
	physical : Optional[Tuple[float, float, float]]
		The physical parameters (m, a, b); exclusive with `beta`.
	sign : int
		The sign of the 1/r² term of the quadratic+centrifugal family.
	formulation : Formulation
		The reduction form.
	levels : List[QuantumNumbers]
		The quantum-number window, ordered by (n, l).
	nmodel : NLevelModel
		The quantum-number model of the approximate energies.
	generic : bool
		Uses the generic auxiliary field engine instead of the closed forms.
	numeric : Optional[Path]
		A CSV eigenvalue table to compare against instead of solving again.
	constraints : str
		The name of the constraint set used by `fit`.
	kind : ModelKind
		The model shape fitted by `fit`.
	betas : Optional[List[float]]
		The β samples of `fit`; `None` picks the family's default grid.
	refit : bool
		Appends refitted parameter rows to the `tables` output.
	solver : SolverConfig
		The numerical eigensolver configuration.
	jobs : int
		The number of worker threads.
	output_format : str
		The name of an `OutputFormat` member.
	output : Optional[Path]
		Where to write the result; `None` writes to stdout.
	digits : Optional[int]
		The number of significant digits; `None` keeps the format's default.
	verbose : bool
		Verbosity of the logs.
	"""

	command: Command
	family: Family
	beta: Optional[float]
	physical: Optional[Tuple[float, float, float]]
	sign: int
	formulation: Formulation
	levels: List[QuantumNumbers]
	nmodel: NLevelModel
	generic: bool
	numeric: Optional[Path]
	constraints: str
	kind: ModelKind
	betas: Optional[List[float]]
	refit: bool
	solver: SolverConfig
	jobs: int
	output_format: str
	output: Optional[Path]
	digits: Optional[int]
	verbose: bool


"""Anything a formatter accepts."""
Report = Union[Table, TableSet, EigenTable, FitReport]


class ReportEncoder(JSONEncoder):
	"""An encoder turning reports, enumerations and numpy scalars into JSON.

	Methods
	-------
	default(obj)
		Returns a JSON-serializable view of `obj`.
	"""

	def default(self: JSONEncoder, obj: Any) -> Any:
		if hasattr(obj, "to_dict"):
			return obj.to_dict()
		if isinstance(obj, Enum):
			return obj.value
		if isinstance(obj, np.floating):
			return float(obj)
		if isinstance(obj, np.integer):
			return int(obj)
		if isinstance(obj, Path):
			return str(obj)
		# Let the base class default method raise the TypeError
		return JSONEncoder.default(self, obj)


def window(n_values: Iterable[int], l_values: Iterable[int]) -> List[QuantumNumbers]:
	"""Builds the (n, l) window ordered by n then l."""

	l_values = list(l_values)
	return [QuantumNumbers(n, l) for n in n_values for l in l_values]  # noqa: E741


"""The standard 4×4 window (n, l ∈ 0..3)."""
STANDARD_WINDOW: List[QuantumNumbers] = window(range(4), range(4))
