# mastergraph/core/diagonal_dominance.py
"""
Диагональное преобладание (SDD / WDD / WCDD) и сертификат обратимости
переходного блока Г_{B0}.
"""
from typing import Literal, Optional
import logging
import math

import networkx as nx
import numpy as np
import numpy.typing as npt
import scipy.linalg

from mastergraph.config import settings
from mastergraph.core.connectivity import check_condensation, condense
from mastergraph.core.network_model import build_generator
from mastergraph.exceptions import NonSquare, NoTransientStates
from mastergraph.schemas.network import StateNetwork
from mastergraph.schemas.structure import Condensation, DominanceReport, RowClass

logger = logging.getLogger(__name__)

Orientation = Literal["rows", "columns"]


def _dominance_report(matrix: np.ndarray, row_class: list[RowClass], orientation: Orientation) -> DominanceReport:
    """Свидетели цепочек и итоговые флаги по готовой классификации строк"""
    n = matrix.shape[0]
    sdd_rows = [i for i in range(n) if row_class[i] is RowClass.SDD]
    witness: list[Optional[tuple[int, ...]]] = [None] * n
    if sdd_rows:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        rows, cols = np.nonzero(matrix)
        graph.add_edges_from((int(i), int(j)) for i, j in zip(rows, cols) if i != j)
        # пути от SDD-строк в обратном графе = пути к SDD-строкам в прямом
        paths = nx.multi_source_dijkstra_path(graph.reverse(copy=False), sdd_rows)
        for i in range(n):
            if row_class[i] is not RowClass.SDD and i in paths:
                witness[i] = tuple(reversed(paths[i]))

    is_wdd = all(c is not RowClass.VIOLATING for c in row_class)
    is_sdd = len(sdd_rows) == n
    is_wcdd = is_wdd and all(
        row_class[i] is RowClass.SDD or witness[i] is not None for i in range(n)
    )
    return DominanceReport(
        row_class=tuple(row_class),
        is_wdd=is_wdd,
        is_sdd=is_sdd,
        is_wcdd=is_wcdd,
        chain_witness=tuple(witness),
        orientation=orientation,
    )


def classify_dominance(m: npt.ArrayLike, orientation: Orientation = "rows") -> DominanceReport:
    """
    Классифицировать строки матрицы (или столбцы при orientation="columns").

    Строка i SDD, если |m_ii| > sum_{j != i} |m_ij|; WCDD проверяется
    поиском пути по ненулевым внедиагональным элементам от каждой
    не-SDD строки к какой-либо SDD строке.
    """
    matrix = np.asarray(m, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise NonSquare(f"expected a nonempty square matrix, got shape {matrix.shape}")
    if orientation == "columns":
        matrix = matrix.T

    n = matrix.shape[0]
    magnitude = np.abs(matrix)
    row_class = []
    for i in range(n):
        diagonal = float(magnitude[i, i])
        off_sum = math.fsum(float(x) for j, x in enumerate(magnitude[i]) if j != i)
        if diagonal > off_sum:
            row_class.append(RowClass.SDD)
        elif diagonal == off_sum:
            row_class.append(RowClass.WDD_ONLY)
        else:
            row_class.append(RowClass.VIOLATING)
    return _dominance_report(matrix, row_class, orientation)


def scaled_min_singular_value(m: npt.ArrayLike) -> float:
    """Наименьшее сингулярное число после нормировки строк на единичный максимум"""
    matrix = np.asarray(m, dtype=np.float64)
    row_max = np.abs(matrix).max(axis=1, keepdims=True)
    row_max[row_max == 0] = 1.0
    return float(scipy.linalg.svdvals(matrix / row_max).min())


def transient_states(cond: Condensation) -> list[int]:
    """Состояния вне всех минимальных поглощающих множеств, по возрастанию"""
    absorbed = {i for sink in cond.sinks for i in sink}
    return [i for component in cond.components for i in component if i not in absorbed]


def transient_block(net: StateNetwork, cond: Condensation) -> Optional[np.ndarray]:
    """Блок Г_{B0} или None, если M = 0"""
    check_condensation(net, cond)
    transient = sorted(transient_states(cond))
    if not transient:
        return None
    gamma = build_generator(net)
    return gamma[np.ix_(transient, transient)]


def certify_transient_invertible(net: StateNetwork) -> DominanceReport:
    """
    Сертификат WCDD для Г_{B0}. Доказательство идёт по столбцам Г,
    поэтому проверяется транспонированный блок (orientation="columns").
    """
    cond = condense(net)
    block = transient_block(net, cond)
    if block is None:
        raise NoTransientStates("every state lies in a minimal absorbing set (M = 0)")

    # столбец Г_{B0} строго доминирует ровно тогда, когда из состояния есть
    # переход за пределы B0; иначе |Г_jj| равен сумме его внедиагональных элементов
    transient = sorted(transient_states(cond))
    position = {s: k for k, s in enumerate(transient)}
    leaks = {e.src for e in net.edges if e.src in position and e.dst not in position}
    column_class = [RowClass.SDD if s in leaks else RowClass.WDD_ONLY for s in transient]
    report = _dominance_report(block.T, column_class, "columns")
    condition = float(np.linalg.cond(block))
    sigma = scaled_min_singular_value(block.T)
    if not report.is_wcdd:
        logger.warning(f"Transient block of size {block.shape[0]} is not WCDD")
    if sigma <= settings.SINGULAR_VALUE_ATOL:
        logger.warning(f"Transient block looks numerically singular (sigma_min={sigma:.3e})")
    logger.debug(f"Transient block certificate: wcdd={report.is_wcdd}, cond={condition:.3e}")
    return report.model_copy(update={
        "condition_estimate": condition,
        "min_scaled_singular_value": sigma,
    })
