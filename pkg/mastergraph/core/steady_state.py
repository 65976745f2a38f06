# mastergraph/core/steady_state.py
"""
Размерность ядра Г, базис стационарных состояний, признак релаксации
и предельное распределение для произвольного начального условия.
"""
from typing import Optional
import logging
import warnings

import numpy as np
import numpy.typing as npt
import scipy.linalg

from mastergraph.config import settings
from mastergraph.core.arborescence import stationary_via_trees
from mastergraph.core.connectivity import check_condensation, condense, minimal_absorbing_sets
from mastergraph.core.diagonal_dominance import transient_block, transient_states
from mastergraph.core.network_model import as_probability_vector, build_generator, subnetwork
from mastergraph.core.parallel import ordered_map
from mastergraph.exceptions import (
    ConsistencyError,
    NumericMismatch,
    SingularTransientBlock,
)
from mastergraph.schemas.dynamics import BasisMethod, LimitResult, SteadyStateBasis
from mastergraph.schemas.network import StateNetwork
from mastergraph.schemas.structure import BlockPermutation, Condensation, StateSet

logger = logging.getLogger(__name__)


def numeric_nullity(matrix: npt.ArrayLike) -> int:
    """Число сингулярных чисел не больше NULLITY_RTOL * ||M||"""
    values = scipy.linalg.svdvals(np.asarray(matrix, dtype=np.float64))
    scale = values.max(initial=0.0)
    if scale == 0:
        return len(values)
    return int(np.count_nonzero(values <= settings.NULLITY_RTOL * scale))


def null_space_stationary(net: StateNetwork) -> np.ndarray:
    """Стационарный вектор сильно связной сети через ядро Г (O(N^3))"""
    gamma = build_generator(net)
    if not gamma.any():
        return np.ones(net.size) / net.size
    kernel = scipy.linalg.null_space(gamma, rcond=settings.NULLITY_RTOL)
    if kernel.shape[1] != 1:
        raise NumericMismatch(f"expected a one-dimensional kernel, got {kernel.shape[1]}")
    vector = np.abs(kernel[:, 0])
    return vector / vector.sum()


def block_permutation(net: StateNetwork, cond: Condensation) -> BlockPermutation:
    """Перенумерация: переходные состояния, затем B_1, ..., B_n"""
    check_condensation(net, cond)
    transient = sorted(transient_states(cond))
    sinks = cond.sinks
    perm = BlockPermutation(
        order=tuple(transient) + tuple(i for sink in sinks for i in sink),
        block_sizes=(len(transient),) + tuple(len(sink) for sink in sinks),
    )

    permuted = build_generator(net)[np.ix_(perm.order, perm.order)]
    start = perm.transient_count
    for size in perm.block_sizes[1:]:
        block_columns = permuted[:, start:start + size]
        outside = np.ones(len(perm.order), dtype=bool)
        outside[start:start + size] = False
        if np.any(block_columns[outside] != 0):
            raise ConsistencyError("permuted generator lacks the block-triangular zero pattern")
        start += size
    return perm


def kernel_dimension(net: StateNetwork) -> int:
    """Число минимальных поглощающих множеств, сверенное с численной размерностью ядра"""
    structural = len(minimal_absorbing_sets(net))
    numeric = numeric_nullity(build_generator(net))
    if structural != numeric:
        raise NumericMismatch(
            f"{structural} minimal absorbing sets but numeric nullity of the generator is {numeric}"
        )
    return structural


def is_relaxing(net: StateNetwork) -> bool:
    return kernel_dimension(net) == 1


def _sink_stationary(net: StateNetwork, sink: StateSet, cap: int) -> tuple[np.ndarray, BasisMethod]:
    sub = subnetwork(net, sink)
    if len(sink) <= cap:
        return stationary_via_trees(sub, cap=cap), BasisMethod.TREES
    logger.info(f"Sink of size {len(sink)} exceeds the tree cap, using nullspace")
    return null_space_stationary(sub), BasisMethod.NULLSPACE


def steady_state_basis(net: StateNetwork, cap: Optional[int] = None) -> SteadyStateBasis:
    """Для каждого стока B_i: q_i из подсети, вложенный как p_i = (0, ..., q_i, ..., 0)"""
    cap = settings.TREE_CAP if cap is None else cap
    sinks = minimal_absorbing_sets(net)
    solved = ordered_map(lambda sink: _sink_stationary(net, sink, cap), sinks)

    gamma = build_generator(net)
    scale = max(float(np.abs(gamma).sum(axis=0).max(initial=0.0)), 1.0)
    vectors = []
    for sink, (q, _) in zip(sinks, solved):
        p = np.zeros(net.size)
        p[list(sink)] = q
        residual = float(np.abs(gamma @ p).max())
        if not residual <= settings.KERNEL_RTOL * scale:
            raise NumericMismatch(f"basis vector for sink {net.labels(sink)} has residual {residual:.3e}")
        vectors.append(tuple(float(x) for x in p))

    return SteadyStateBasis(
        vectors=tuple(vectors),
        supports=tuple(sinks),
        methods=tuple(method for _, method in solved),
    )


def _lu_factor_checked(block: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(block, check_finite=False)
    if np.any(np.diag(lu) == 0):
        raise SingularTransientBlock("transient block is singular")
    return lu, piv


def limit_distribution(
    net: StateNetwork,
    p0: npt.ArrayLike,
    basis: Optional[SteadyStateBasis] = None,
) -> LimitResult:
    """
    lambda_i = масса p0 в B_i + поглощённая в B_i доля массы переходных
    состояний; вероятности поглощения a_i решают a_i Г_{B0} = -1^T Г_{B0->B_i}.
    """
    p = as_probability_vector(p0, net.size)
    cond = condense(net)
    basis = basis if basis is not None else steady_state_basis(net)
    supports = [list(s) for s in basis.supports]

    coefficients = np.array([p[s].sum() for s in supports])
    block = transient_block(net, cond)
    if block is not None:
        transient = sorted(transient_states(cond))
        gamma = build_generator(net)
        flows = np.array([gamma[np.ix_(s, transient)].sum(axis=0) for s in supports])
        absorption = scipy.linalg.lu_solve(_lu_factor_checked(block), -flows.T, trans=1).T

        defect = float(np.abs(absorption.sum(axis=0) - 1.0).max())
        if defect > 1e-8:
            raise NumericMismatch(f"absorption probabilities do not sum to 1 (defect {defect:.3e})")
        coefficients = coefficients + absorption @ p[transient]

    if coefficients.min() < -settings.PROBABILITY_ATOL:
        raise NumericMismatch(f"negative limit coefficient {coefficients.min():.3e}")
    coefficients = np.clip(coefficients, 0.0, None)
    coefficients = coefficients / coefficients.sum()

    p_infinity = np.asarray(basis.vectors).T @ coefficients
    return LimitResult(
        coefficients=tuple(float(c) for c in coefficients),
        p_infinity=tuple(float(x) for x in p_infinity),
    )
