# mastergraph/core/connectivity.py
"""
Достижимость, классы связности, конденсация по компонентам сильной связности
и минимальные поглощающие множества (стоки конденсации).
"""
from typing import Iterable
import logging

import networkx as nx
import numpy as np

from mastergraph.core.network_model import adjacency_matrix, to_digraph
from mastergraph.exceptions import ConsistencyError, EmptySet, IndexOutOfRange, StaleCondensation
from mastergraph.schemas.network import State, StateNetwork
from mastergraph.schemas.structure import Condensation, ConnectivityClass, StateSet, state_set

logger = logging.getLogger(__name__)


def reach_from(net: StateNetwork, a: State) -> StateSet:
    """R(a->): состояния, достижимые из a (сам a входит всегда)"""
    index = net.index_of(a)
    return state_set(nx.descendants(to_digraph(net), index) | {index})


def reach_to(net: StateNetwork, a: State) -> StateSet:
    """R(->a): состояния, из которых достижимо a (сам a входит всегда)"""
    index = net.index_of(a)
    return state_set(nx.ancestors(to_digraph(net), index) | {index})


def classify_connectivity(net: StateNetwork) -> ConnectivityClass:
    """Сильнейший применимый класс: strong => unilateral => weak"""
    graph = to_digraph(net)
    if nx.is_strongly_connected(graph):
        return ConnectivityClass.STRONG
    if nx.is_semiconnected(graph):
        return ConnectivityClass.UNILATERAL
    if nx.is_weakly_connected(graph):
        return ConnectivityClass.WEAK
    return ConnectivityClass.DISCONNECTED


def condense(net: StateNetwork) -> Condensation:
    graph = to_digraph(net)
    # детерминированный порядок: по наименьшему индексу компоненты
    components = sorted(
        (state_set(c) for c in nx.strongly_connected_components(graph)),
        key=lambda c: c[0],
    )
    dag = nx.condensation(graph, scc=[set(c) for c in components])
    dag_edges = tuple(sorted(dag.edges()))
    sinks = tuple(c for c in range(len(components)) if dag.out_degree(c) == 0)

    logger.debug(f"Condensation: {len(components)} components, {len(dag_edges)} dag edges, sinks {sinks}")
    return Condensation(
        components=tuple(components),
        dag_edges=dag_edges,
        sink_components=sinks,
    )


def check_condensation(net: StateNetwork, cond: Condensation) -> None:
    """Конденсация должна соответствовать сети"""
    if cond != condense(net):
        raise StaleCondensation("condensation does not match the network")


def is_absorbing(net: StateNetwork, subset: Iterable[int]) -> bool:
    """Нет рёбер из B наружу"""
    members = set(subset)
    if not members:
        raise EmptySet("absorbing check needs a nonempty set")
    if any(not 0 <= i < net.size for i in members):
        raise IndexOutOfRange(f"set {sorted(members)} refers to missing states")
    return not any(e.src in members and e.dst not in members for e in net.edges)


def minimal_absorbing_sets(net: StateNetwork) -> list[StateSet]:
    """Минимальные поглощающие множества = стоки конденсации"""
    cond = condense(net)
    graph = to_digraph(net)
    sinks = cond.sinks
    for sink in sinks:
        if not is_absorbing(net, sink) or not nx.is_strongly_connected(graph.subgraph(sink)):
            raise ConsistencyError(f"sink component {list(sink)} is not a strongly connected absorbing set")
    return sinks


def is_irreducible_adjacency(net: StateNetwork) -> bool:
    """(I + A)^(N-1) > 0 поэлементно, в булевой арифметике с насыщением"""
    n = net.size
    base = (np.eye(n, dtype=np.int64) + adjacency_matrix(net)) > 0
    result = np.eye(n, dtype=bool)
    power = n - 1
    while power:
        if power & 1:
            result = (result.astype(np.int64) @ base.astype(np.int64)) > 0
        base = (base.astype(np.int64) @ base.astype(np.int64)) > 0
        power >>= 1
    irreducible = bool(result.all())

    if irreducible != (len(condense(net).components) == 1):
        raise ConsistencyError("adjacency irreducibility disagrees with the condensation")
    return irreducible
