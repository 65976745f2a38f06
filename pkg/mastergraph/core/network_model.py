# mastergraph/core/network_model.py
"""
Описание сети переходов: разбор входных форматов, проверка инвариантов,
построение генератора Г и матрицы смежности A.
"""
from typing import Iterable, Optional, Sequence
import json
import logging
import math

import networkx as nx
import numpy as np
import numpy.typing as npt

from mastergraph.config import settings
from mastergraph.exceptions import ConsistencyError, InvalidDistribution, MalformedLine
from mastergraph.schemas.network import Edge, NetworkFormat, State, StateNetwork, check_network

logger = logging.getLogger(__name__)

GeneratorMatrix = npt.NDArray[np.float64]
ProbabilityVector = npt.NDArray[np.float64]


def make_network(
    states: Sequence[str],
    edges: Iterable[tuple[int, int, float]],
    lines: Optional[Sequence[Optional[int]]] = None,
) -> StateNetwork:
    """Собрать StateNetwork, ошибки инвариантов превращаются в доменные исключения"""
    edge_models = tuple(Edge(src=s, dst=d, rate=float(r)) for s, d, r in edges)
    check_network(tuple(states), edge_models, lines)
    return StateNetwork(states=tuple(states), edges=edge_models)


def _parse_rate(raw: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise MalformedLine(f"rate {raw!r} is not a decimal number", line) from None


def _parse_edge_list(text: str) -> StateNetwork:
    index: dict[str, int] = {}
    edges: list[tuple[int, int, float]] = []
    lines: list[int] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in raw.rstrip("\r\n").split("\t")]
        if len(fields) != 3 or not fields[0] or not fields[1]:
            raise MalformedLine("expected 'src<TAB>dst<TAB>rate'", number)
        src, dst, raw_rate = fields
        rate = _parse_rate(raw_rate, number)
        for label in (src, dst):
            index.setdefault(label, len(index))
        edges.append((index[src], index[dst], rate))
        lines.append(number)

    if not index:
        raise MalformedLine("edge list contains no edges")
    return make_network(list(index), edges, lines)


def _parse_json(text: str) -> StateNetwork:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedLine(f"invalid JSON: {e.msg}", e.lineno) from None
    if not isinstance(payload, dict) or not isinstance(payload.get("edges", []), list):
        raise MalformedLine("expected an object with an 'edges' list")

    index: dict[str, int] = {}
    for label in payload.get("states", []) or []:
        label = str(label)
        if label in index:
            raise MalformedLine(f"state {label!r} listed twice")
        index[label] = len(index)

    edges: list[tuple[int, int, float]] = []
    lines: list[int] = []
    # для JSON "строкой" считается порядковый номер ребра
    for number, item in enumerate(payload.get("edges", []), start=1):
        if not isinstance(item, dict) or not {"src", "dst", "rate"} <= item.keys():
            raise MalformedLine("edge needs 'src', 'dst' and 'rate'", number)
        src, dst = str(item["src"]), str(item["dst"])
        rate = item["rate"]
        if isinstance(rate, bool) or not isinstance(rate, (int, float)):
            rate = _parse_rate(str(rate), number)
        for label in (src, dst):
            index.setdefault(label, len(index))
        edges.append((index[src], index[dst], float(rate)))
        lines.append(number)

    if not index:
        raise MalformedLine("network contains no states")
    return make_network(list(index), edges, lines)


def parse_network(text: str, format: NetworkFormat | str = NetworkFormat.EDGE_LIST) -> StateNetwork:
    """Разобрать сеть из текста (edge_list или json)"""
    fmt = NetworkFormat(format)
    net = _parse_edge_list(text) if fmt is NetworkFormat.EDGE_LIST else _parse_json(text)
    logger.debug(f"Parsed {fmt.value} network: {net.size} states, {len(net.edges)} edges")
    return net


def serialize_network(net: StateNetwork, format: NetworkFormat | str = NetworkFormat.EDGE_LIST) -> str:
    """Обратная операция к parse_network"""
    fmt = NetworkFormat(format)
    if fmt is NetworkFormat.JSON:
        return json.dumps({
            "states": list(net.states),
            "edges": [
                {"src": net.states[e.src], "dst": net.states[e.dst], "rate": e.rate}
                for e in net.edges
            ],
        })
    # в edge_list изолированные состояния не выражаются
    if len({i for e in net.edges for i in (e.src, e.dst)}) != net.size:
        raise MalformedLine("edge_list cannot represent isolated states, use json")
    lines = [f"{net.states[e.src]}\t{net.states[e.dst]}\t{e.rate!r}" for e in net.edges]
    return "\n".join(lines) + "\n"


def subnetwork(net: StateNetwork, states: Iterable[int]) -> StateNetwork:
    """Подсеть (B, E_B): состояния B и все рёбра внутри B"""
    members = sorted(set(states))
    local = {g: k for k, g in enumerate(members)}
    edges = [
        (local[e.src], local[e.dst], e.rate)
        for e in net.edges
        if e.src in local and e.dst in local
    ]
    return make_network([net.states[g] for g in members], edges)


def to_digraph(net: StateNetwork) -> nx.DiGraph:
    """Ориентированный граф по индексам состояний, вес ребра равен интенсивности"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(net.size))
    graph.add_weighted_edges_from((e.src, e.dst, e.rate) for e in net.edges)
    return graph


def build_generator(net: StateNetwork) -> GeneratorMatrix:
    """Генератор Г: Г_ij = rate(j->i) при i != j, на диагонали минус сумма столбца"""
    n = net.size
    gamma = np.zeros((n, n), dtype=np.float64)
    for e in net.edges:
        gamma[e.dst, e.src] = e.rate
    gamma[np.diag_indices(n)] = -gamma.sum(axis=0)

    column_sums = gamma.sum(axis=0)
    scale = max(1.0, float(np.abs(gamma).max(initial=0.0)))
    if np.abs(column_sums).max(initial=0.0) > settings.COLUMN_SUM_ATOL * scale:
        raise ConsistencyError(f"generator column sums deviate from zero: {column_sums}")
    return gamma


def as_probability_vector(values: npt.ArrayLike, n: int) -> ProbabilityVector:
    """Проверить, что values является распределением вероятностей длины n"""
    vector = np.asarray(values, dtype=np.float64)
    if vector.shape != (n,):
        raise InvalidDistribution(f"expected a vector of length {n}, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise InvalidDistribution("probabilities must be finite")
    tol = settings.PROBABILITY_ATOL
    if vector.min() < -tol or vector.max() > 1 + tol:
        raise InvalidDistribution("probabilities must lie in [0, 1]")
    if abs(math.fsum(vector) - 1.0) > tol:
        raise InvalidDistribution(f"probabilities must sum to 1, got {math.fsum(vector)!r}")
    return np.clip(vector, 0.0, 1.0)


def point_mass(net: StateNetwork, state: State) -> ProbabilityVector:
    vector = np.zeros(net.size)
    vector[net.index_of(state)] = 1.0
    return vector


def uniform_distribution(net: StateNetwork) -> ProbabilityVector:
    return np.full(net.size, 1.0 / net.size)


def adjacency_matrix(net: StateNetwork) -> npt.NDArray[np.int64]:
    """A_ij = 1, если есть ребро j -> i"""
    adjacency = np.zeros((net.size, net.size), dtype=np.int64)
    for e in net.edges:
        adjacency[e.dst, e.src] = 1
    return adjacency
