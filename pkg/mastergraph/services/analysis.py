# mastergraph/services/analysis.py
from contextlib import contextmanager
from pathlib import Path
from typing import Optional, Union
import json
import logging
import time

import numpy as np
from pydantic import ValidationError

from mastergraph.core.arborescence import (
    enumerate_in_trees,
    stationary_via_trees,
    tree_polynomial_via_cofactor,
)
from mastergraph.core.connectivity import classify_connectivity, condense, minimal_absorbing_sets
from mastergraph.core.diagonal_dominance import certify_transient_invertible, transient_states
from mastergraph.core.evolution import evolve
from mastergraph.core.network_model import (
    as_probability_vector,
    parse_network,
    point_mass,
    uniform_distribution,
)
from mastergraph.core.steady_state import kernel_dimension, limit_distribution, steady_state_basis
from mastergraph.core.stochastic_oracle import empirical_distribution
from mastergraph.exceptions import InputValidationError, InvalidDistribution, MalformedLine, NumericMismatch
from mastergraph.schemas.dynamics import EmpiricalDistribution, SimulationConfig, SteadyStateBasis
from mastergraph.schemas.network import NetworkFormat, NetworkSummary, StateNetwork
from mastergraph.schemas.report import (
    AnalysisReport,
    BasisEntry,
    EvolveReport,
    RootTrees,
    SteadyReport,
    TreesReport,
)
from mastergraph.schemas.structure import ConnectivityClass

logger = logging.getLogger(__name__)


def infer_format(path: Union[str, Path], format: Optional[str] = None) -> NetworkFormat:
    """Явный формат или по расширению: .json -> json, иначе edge_list"""
    if format:
        return NetworkFormat(format)
    return NetworkFormat.JSON if Path(path).suffix.lower() == ".json" else NetworkFormat.EDGE_LIST


def _distribution_from_json(net: StateNetwork, payload) -> np.ndarray:
    """Массив вероятностей по индексам или объект {метка: вероятность}"""
    if isinstance(payload, list):
        return as_probability_vector(payload, net.size)
    if isinstance(payload, dict):
        vector = np.zeros(net.size)
        for label, value in payload.items():
            vector[net.index_of(str(label))] = float(value)
        return as_probability_vector(vector, net.size)
    raise InvalidDistribution("initial distribution must be a JSON array or object")


def resolve_p0(net: StateNetwork, spec: str) -> np.ndarray:
    """
    Начальное распределение по строке:

    - "uniform"
    - "state:LABEL": вся масса в одном состоянии
    - JSON-литерал (массив или объект метка -> вероятность)
    - путь к файлу с таким JSON
    """
    spec = spec.strip()
    if spec == "uniform":
        return uniform_distribution(net)
    if spec.startswith("state:"):
        return point_mass(net, spec.removeprefix("state:"))
    try:
        text = spec if spec[:1] in "[{" else Path(spec).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidDistribution(f"cannot read initial distribution {spec!r}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise InvalidDistribution(f"initial distribution file {spec!r} is not UTF-8 text") from None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidDistribution(f"initial distribution is not valid JSON: {e.msg}") from None
    return _distribution_from_json(net, payload)


def resolve_start(net: StateNetwork, spec: str) -> Union[int, tuple[float, ...]]:
    """Начало симуляции: метка состояния или распределение (см. resolve_p0)"""
    spec = spec.strip()
    if spec in net.states:
        return net.index_of(spec)
    if spec.startswith("state:"):
        return net.index_of(spec.removeprefix("state:"))
    return tuple(float(x) for x in resolve_p0(net, spec))


class NetworkAnalysisService:
    """Конвейер анализа одной сети: общая логика для CLI и HTTP"""

    def __init__(self, net: StateNetwork, cap: Optional[int] = None):
        self.net = net
        self.cap = cap
        self.timings: dict[str, float] = {}

    @classmethod
    def from_text(cls, text: str, format: Union[NetworkFormat, str], cap: Optional[int] = None) -> "NetworkAnalysisService":
        started = time.perf_counter()
        net = parse_network(text, format)
        service = cls(net, cap=cap)
        service.timings["parse"] = (time.perf_counter() - started) * 1000.0
        return service

    @classmethod
    def from_file(
        cls,
        path: Union[str, Path],
        format: Optional[str] = None,
        cap: Optional[int] = None,
    ) -> "NetworkAnalysisService":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise MalformedLine(f"cannot read {str(path)!r}: {e.strerror}") from None
        except UnicodeDecodeError:
            raise MalformedLine(f"{str(path)!r} is not UTF-8 text") from None
        return cls.from_text(text, infer_format(path, format), cap=cap)

    @contextmanager
    def _stage(self, name: str):
        started = time.perf_counter()
        yield
        self.timings[name] = (time.perf_counter() - started) * 1000.0

    def _basis_entries(self, basis: SteadyStateBasis) -> list[BasisEntry]:
        return [
            BasisEntry(support=self.net.labels(support), vector=list(vector))
            for support, vector in zip(basis.supports, basis.vectors)
        ]

    def analyze(self, p0: Optional[np.ndarray] = None) -> AnalysisReport:
        """parse -> condense -> минимальные множества -> сертификат Г_{B0} -> базис -> предел"""
        net = self.net
        logger.info(f"Analyzing network with {net.size} states and {len(net.edges)} edges")

        with self._stage("connectivity"):
            connectivity = classify_connectivity(net)
        with self._stage("condense"):
            cond = condense(net)
        with self._stage("minimal_sets"):
            sinks = minimal_absorbing_sets(net)
        with self._stage("kernel"):
            dimension = kernel_dimension(net)
        dominance = None
        if transient_states(cond):
            with self._stage("certificate"):
                dominance = certify_transient_invertible(net)
        with self._stage("basis"):
            basis = steady_state_basis(net, cap=self.cap)
        limit = None
        if p0 is not None:
            with self._stage("limit"):
                limit = limit_distribution(net, p0, basis)

        if not (len(sinks) == basis.n == dimension):
            raise NumericMismatch(
                f"{len(sinks)} minimal absorbing sets, {basis.n} basis vectors, kernel dimension {dimension}"
            )

        return AnalysisReport(
            network=NetworkSummary(states=net.size, edges=len(net.edges)),
            states=list(net.states),
            connectivity=connectivity,
            condensation=cond.to_json(net),
            minimal_absorbing_sets=[net.labels(s) for s in sinks],
            relaxing=dimension == 1,
            kernel_dimension=dimension,
            n=basis.n,
            basis=self._basis_entries(basis),
            lambda_=list(limit.coefficients) if limit else None,
            p_infinity=list(limit.p_infinity) if limit else None,
            dominance=dominance,
            timings_ms=dict(self.timings),
        )

    def steady(self, p0: Optional[np.ndarray] = None) -> SteadyReport:
        basis = steady_state_basis(self.net, cap=self.cap)
        limit = limit_distribution(self.net, p0, basis) if p0 is not None else None
        return SteadyReport(
            states=list(self.net.states),
            n=basis.n,
            relaxing=basis.n == 1,
            basis=self._basis_entries(basis),
            lambda_=list(limit.coefficients) if limit else None,
            p_infinity=list(limit.p_infinity) if limit else None,
        )

    def trees(self, root: Optional[str] = None) -> TreesReport:
        """Входящие деревья для одного корня или для всех состояний"""
        net = self.net
        roots = [net.index_of(root)] if root is not None else range(net.size)
        entries = []
        for r in roots:
            trees = enumerate_in_trees(net, r, cap=self.cap)
            entries.append(RootTrees(
                root=net.states[r],
                count=len(trees),
                cofactor=tree_polynomial_via_cofactor(net, r),
                trees=[tree.to_json(net) for tree in trees],
            ))

        stationary = None
        if classify_connectivity(net) is ConnectivityClass.STRONG:
            stationary = [float(x) for x in stationary_via_trees(net, cap=self.cap)]
        return TreesReport(roots=entries, stationary=stationary)

    def evolve(self, p0: np.ndarray, t: float) -> EvolveReport:
        p_t = evolve(self.net, p0, t)
        return EvolveReport(t=t, p_t=[float(x) for x in p_t])

    def simulate(self, horizon: float, trajectories: int, seed: int, start: Union[int, tuple[float, ...]]) -> EmpiricalDistribution:
        try:
            config = SimulationConfig(horizon=horizon, trajectories=trajectories, seed=seed, start=start)
        except ValidationError as e:
            raise InputValidationError(f"invalid simulation settings: {e.errors()[0]['msg']}") from None
        return empirical_distribution(self.net, config)
