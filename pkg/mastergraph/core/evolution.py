# mastergraph/core/evolution.py
"""
Эволюция во времени p_t = e^{Гt} p_0 методом униформизации, свойства
оператора решения и нижняя оценка его элементов.
"""
import logging
import math

import networkx as nx
import numpy as np
import numpy.typing as npt
import scipy.linalg
import scipy.stats

from mastergraph.config import settings
from mastergraph.core.network_model import (
    GeneratorMatrix,
    ProbabilityVector,
    as_probability_vector,
    build_generator,
    to_digraph,
)
from mastergraph.core.steady_state import kernel_dimension
from mastergraph.exceptions import NegativeTime, NumericMismatch, TooLarge, TruncationError
from mastergraph.schemas.dynamics import PositivityBound, SpectralReport
from mastergraph.schemas.network import State, StateNetwork

logger = logging.getLogger(__name__)

EXPM_ORACLE_MAX_N = 50


def _check_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise NegativeTime(f"time must be a finite nonnegative number, got {t}")
    return t


def _poisson_weights(mean: float) -> np.ndarray:
    """Веса Пуассона до k, за которым остаётся масса не больше POISSON_TAIL"""
    cap = int(math.ceil(10 * mean + 50))
    last = float(scipy.stats.poisson.isf(settings.POISSON_TAIL, mean))
    if not math.isfinite(last) or last > cap:
        raise TruncationError(f"Poisson series for mean {mean:.6g} not converged within {cap} terms")
    return scipy.stats.poisson.pmf(np.arange(int(last) + 1), mean)


def _uniformize(gamma: GeneratorMatrix, x: np.ndarray, t: float) -> np.ndarray:
    """e^{Гt} x = sum_k Poisson(k; Lt) P^k x,  P = I + Г/L"""
    rate = settings.UNIFORMIZATION_FACTOR * float(np.abs(np.diag(gamma)).max(initial=0.0))
    if rate == 0 or t == 0:
        return x.copy()

    transition = np.eye(gamma.shape[0]) + gamma / rate
    weights = _poisson_weights(rate * t)
    logger.debug(f"Uniformization: rate={rate:.6g}, t={t:.6g}, {len(weights)} terms")

    term = x.copy()
    result = weights[0] * term
    for weight in weights[1:]:
        term = transition @ term
        result += weight * term
    return result


def _renormalize(values: np.ndarray, axis=None) -> np.ndarray:
    totals = values.sum(axis=axis)
    defect = float(np.abs(totals - 1.0).max())
    if defect >= settings.RENORMALIZATION_DEFECT:
        raise TruncationError(f"uniformization lost probability mass (defect {defect:.3e})")
    return values / totals


def evolve(net: StateNetwork, p0: npt.ArrayLike, t: float) -> ProbabilityVector:
    """p_t = e^{Гt} p_0"""
    t = _check_time(t)
    p = as_probability_vector(p0, net.size)
    if t == 0:
        return p.copy()
    return _renormalize(_uniformize(build_generator(net), p, t))


def solution_operator(net: StateNetwork, t: float) -> np.ndarray:
    """Полная матрица e^{Гt}, столбцы являются распределениями"""
    t = _check_time(t)
    identity = np.eye(net.size)
    if t == 0:
        return identity
    return _renormalize(_uniformize(build_generator(net), identity, t), axis=0)


def expm_oracle(net: StateNetwork, t: float) -> np.ndarray:
    """Контрольное e^{Гt} через scaling-and-squaring (scipy.linalg.expm)"""
    t = _check_time(t)
    if net.size > EXPM_ORACLE_MAX_N:
        raise TooLarge(f"expm oracle is limited to {EXPM_ORACLE_MAX_N} states")
    return scipy.linalg.expm(build_generator(net) * t)


def positivity_lower_bound(net: StateNetwork, i: State, j: State, t: float) -> PositivityBound:
    """Оценка (e^{Гt})_ij >= gamma^{(j->i)} t^d / d! * e^{Г_min t}"""
    t = _check_time(t)
    ii, jj = net.index_of(i), net.index_of(j)
    gamma_min = float(np.diag(build_generator(net)).min())

    graph = to_digraph(net)
    distance = nx.single_source_shortest_path_length(graph, jj)
    if ii not in distance:
        return PositivityBound(i=ii, j=jj, t=t, d=None, gamma_path=0.0, gamma_min=gamma_min, bound=0.0)

    d = distance[ii]
    # минимум суммы логарифмов интенсивностей по DAG кратчайших путей, по слоям
    best = {jj: 0.0}
    layers: dict[int, list[int]] = {}
    for node, dist in distance.items():
        layers.setdefault(dist, []).append(node)
    for layer in range(1, d + 1):
        for node in layers[layer]:
            best[node] = min(
                best[u] + math.log(graph[u][node]["weight"])
                for u in graph.predecessors(node)
                if distance.get(u) == layer - 1
            )
    log_gamma_path = best[ii]

    if t == 0:
        bound = 1.0 if d == 0 else 0.0
    else:
        bound = math.exp(log_gamma_path + d * math.log(t) - math.lgamma(d + 1) + gamma_min * t)
    return PositivityBound(
        i=ii,
        j=jj,
        t=t,
        d=d,
        gamma_path=math.exp(log_gamma_path),
        log_gamma_path=log_gamma_path,
        gamma_min=gamma_min,
        bound=bound,
    )


def spectral_sanity(net: StateNetwork) -> SpectralReport:
    """Собственные значения Г: Re <= 0, число нулевых = размерность ядра"""
    if net.size > settings.SPECTRAL_MAX_N:
        raise TooLarge(f"dense eigensolve is limited to {settings.SPECTRAL_MAX_N} states")
    gamma = build_generator(net)
    eigenvalues = scipy.linalg.eigvals(gamma)
    norm = float(np.abs(gamma).sum(axis=0).max(initial=0.0))

    max_real = float(eigenvalues.real.max())
    if max_real > 1e-10 * max(norm, 1.0):
        raise NumericMismatch(f"generator has an eigenvalue with positive real part {max_real:.3e}")
    zero_count = int(np.count_nonzero(np.abs(eigenvalues) <= settings.NULLITY_RTOL * norm))
    dimension = kernel_dimension(net)
    if zero_count != dimension:
        raise NumericMismatch(f"{zero_count} zero eigenvalues but kernel dimension {dimension}")

    return SpectralReport(
        eigenvalues_real=tuple(float(x) for x in eigenvalues.real),
        eigenvalues_imag=tuple(float(x) for x in eigenvalues.imag),
        max_real_part=max_real,
        zero_eigenvalues=zero_count,
        kernel_dimension=dimension,
    )
