# mastergraph/core/arborescence.py
"""
Входящие деревья (анти-арборесценции) и формула стационарного состояния
сильно связной сети через суммы весов деревьев, с проверкой через
миноры генератора (теорема о матрице деревьев).
"""
from typing import Iterator, Optional
import logging
import math
import warnings

import networkx as nx
import numpy as np
import scipy.linalg
from scipy.special import logsumexp

from mastergraph.config import settings
from mastergraph.core.network_model import GeneratorMatrix, build_generator, to_digraph
from mastergraph.core.parallel import ordered_map
from mastergraph.exceptions import NotStronglyConnected, TooLarge
from mastergraph.schemas.network import State, StateNetwork
from mastergraph.schemas.structure import InTree

logger = logging.getLogger(__name__)


def _out_neighbors(net: StateNetwork) -> list[list[tuple[int, float]]]:
    out: list[list[tuple[int, float]]] = [[] for _ in range(net.size)]
    for e in net.edges:
        out[e.src].append((e.dst, e.rate))
    for targets in out:
        targets.sort()
    return out


def _iter_parent_choices(net: StateNetwork, root: int) -> Iterator[list[tuple[int, int, float]]]:
    """
    Перебор с возвратом: каждому некорневому состоянию по одному исходящему
    ребру, без циклов. Порядок лексикографический по вектору родителей.
    """
    out = _out_neighbors(net)
    order = [v for v in range(net.size) if v != root]
    parent = [-1] * net.size
    parent[root] = root
    rate = [1.0] * net.size

    def closes_cycle(v: int, w: int) -> bool:
        node = w
        while True:
            if node == v:
                return True
            if node == root or parent[node] == -1:
                return False
            node = parent[node]

    def extend(k: int) -> Iterator[list[tuple[int, int, float]]]:
        if k == len(order):
            yield [(v, parent[v], rate[v]) for v in order]
            return
        v = order[k]
        for w, gamma in out[v]:
            if closes_cycle(v, w):
                continue
            parent[v], rate[v] = w, gamma
            yield from extend(k + 1)
        parent[v] = -1

    yield from extend(0)


def enumerate_in_trees(net: StateNetwork, root: State, cap: Optional[int] = None) -> list[InTree]:
    """Все остовные входящие деревья с корнем root"""
    cap = settings.TREE_CAP if cap is None else cap
    r = net.index_of(root)
    if net.size > cap:
        raise TooLarge(f"in-tree enumeration is capped at {cap} states, network has {net.size}")

    trees = []
    for choice in _iter_parent_choices(net, r):
        rates = [gamma for _, _, gamma in choice]
        trees.append(InTree(
            size=net.size,
            root=r,
            edges=tuple((v, w) for v, w, _ in choice),
            weight=math.prod(rates),
            log_weight=math.fsum(math.log(g) for g in rates),
        ))
    logger.debug(f"Enumerated {len(trees)} in-trees rooted at {net.states[r]!r}")
    return trees


def _log_principal_minor(gamma: GeneratorMatrix, root: int) -> float:
    """log det(-Г без строки и столбца root) через LU с частичным выбором"""
    keep = [k for k in range(gamma.shape[0]) if k != root]
    if not keep:
        return 0.0
    minor = -gamma[np.ix_(keep, keep)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(minor, check_finite=False)
    diagonal = np.diag(lu)
    if np.any(diagonal == 0):
        return -math.inf
    swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
    sign = (-1) ** swaps * int(np.prod(np.sign(diagonal)))
    if sign < 0:
        # отрицательный знак возможен только из-за округления около нуля
        return -math.inf
    return float(np.sum(np.log(np.abs(diagonal))))


def tree_polynomial_via_cofactor(net: StateNetwork, root: State) -> float:
    """Главный минор -Г без корня = сумма весов входящих деревьев с этим корнем"""
    log_value = _log_principal_minor(build_generator(net), net.index_of(root))
    return math.exp(log_value) if log_value > -math.inf else 0.0


def count_in_trees(net: StateNetwork, root: State) -> int:
    """Число входящих деревьев с корнем root (тот же минор при единичных интенсивностях)"""
    unit = net.model_copy(update={"edges": tuple(e.model_copy(update={"rate": 1.0}) for e in net.edges)})
    log_value = _log_principal_minor(build_generator(unit), net.index_of(root))
    return int(round(math.exp(log_value))) if log_value > -math.inf else 0


def _normalize_log(log_values: list[float]) -> np.ndarray:
    values = np.asarray(log_values, dtype=np.float64)
    return np.exp(values - logsumexp(values))


def stationary_via_trees(net: StateNetwork, cap: Optional[int] = None) -> np.ndarray:
    """
    Стационарное состояние сильно связной сети: компонента m пропорциональна
    сумме по деревьям с корнем m произведений интенсивностей рёбер дерева.
    """
    if not nx.is_strongly_connected(to_digraph(net)):
        raise NotStronglyConnected("tree formula requires a strongly connected network")
    n = net.size
    if n == 1:
        return np.ones(1)

    cap = settings.TREE_CAP if cap is None else cap
    enumerate_trees = n <= cap and max(count_in_trees(net, m) for m in range(n)) <= settings.MAX_TREES

    if not enumerate_trees:
        logger.info(f"Using cofactor route for the tree formula ({n} states)")
        gamma = build_generator(net)
        return _normalize_log([_log_principal_minor(gamma, m) for m in range(n)])

    def root_weights(m: int) -> list[float]:
        return [math.prod(g for _, _, g in choice) for choice in _iter_parent_choices(net, m)]

    weights = ordered_map(root_weights, range(n))
    largest = max(max(w) for w in weights)
    smallest = min(min(w) for w in weights)
    # произведения вне нормального диапазона float считаются в логарифмах
    if (
        largest > settings.LOG_SPACE_THRESHOLD
        or not math.isfinite(largest)
        or smallest < np.finfo(np.float64).tiny
    ):
        def root_log_weights(m: int) -> list[float]:
            return [
                math.fsum(math.log(g) for _, _, g in choice)
                for choice in _iter_parent_choices(net, m)
            ]
        return _normalize_log([float(logsumexp(w)) for w in ordered_map(root_log_weights, range(n))])

    sums = np.array([math.fsum(w) for w in weights])
    return sums / math.fsum(sums)
