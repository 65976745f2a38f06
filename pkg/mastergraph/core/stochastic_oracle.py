# mastergraph/core/stochastic_oracle.py
"""
Точное стохастическое моделирование (алгоритм Гиллеспи) процесса скачков,
заданного интенсивностями сети. Используется как независимый
статистический оракул для стационарных и предельных распределений.
"""
import logging
import math

import numpy as np

from mastergraph.config import settings
from mastergraph.core.network_model import as_probability_vector
from mastergraph.core.parallel import ordered_map
from mastergraph.exceptions import NegativeTime
from mastergraph.schemas.dynamics import EmpiricalDistribution, SimulationConfig
from mastergraph.schemas.network import State, StateNetwork

logger = logging.getLogger(__name__)

# отдельные потоки случайных чисел для одиночных траекторий и для пачек
_TRAJECTORY_STREAM = 0
_CHUNK_STREAM = 1


class JumpTables:
    """Суммарные интенсивности выхода и накопленные вероятности скачков"""

    def __init__(self, net: StateNetwork):
        n = net.size
        rates = np.zeros((n, n))
        for e in net.edges:
            rates[e.src, e.dst] = e.rate
        self.exit_rate = rates.sum(axis=1)

        self.cumulative = np.ones((n, n))
        for i in range(n):
            if self.exit_rate[i] == 0:
                continue
            row = np.cumsum(rates[i]) / self.exit_rate[i]
            # после последнего возможного перехода ровно 1, чтобы не "проскочить" его
            last = int(np.nonzero(rates[i])[0].max())
            row[last:] = 1.0
            self.cumulative[i] = row

    def next_state(self, states: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Наименьшее j с u < F_i(j) для каждой пары (i, u)"""
        return np.count_nonzero(self.cumulative[states] <= u[:, None], axis=1)


def _check_horizon(T: float) -> float:
    T = float(T)
    if not math.isfinite(T) or T < 0:
        raise NegativeTime(f"horizon must be a finite nonnegative number, got {T}")
    return T


def trajectory_path(
    net: StateNetwork,
    start_state: State,
    T: float,
    seed: int,
    index: int = 0,
) -> list[tuple[float, int]]:
    """Траектория (время скачка, состояние) до момента T, ключ ГСЧ (seed, index)"""
    T = _check_horizon(T)
    tables = JumpTables(net)
    rng = np.random.default_rng([seed, _TRAJECTORY_STREAM, index])

    state = net.index_of(start_state)
    time = 0.0
    path = [(0.0, state)]
    while True:
        rate = tables.exit_rate[state]
        if rate == 0:
            break  # поглощающее состояние: остаёмся навсегда
        time += rng.exponential(1.0 / rate)
        if time > T:
            break
        state = int(tables.next_state(np.array([state]), np.array([rng.random()]))[0])
        path.append((time, state))
    return path


def simulate_trajectory(
    net: StateNetwork,
    start_state: State,
    T: float,
    seed: int,
    index: int = 0,
) -> int:
    """Состояние в момент T"""
    return trajectory_path(net, start_state, T, seed, index)[-1][1]


def _simulate_chunk(
    tables: JumpTables,
    start: int | np.ndarray,
    T: float,
    seed: int,
    chunk: int,
    size: int,
) -> np.ndarray:
    """Векторизованная пачка траекторий, ключ ГСЧ (seed, номер пачки)"""
    rng = np.random.default_rng([seed, _CHUNK_STREAM, chunk])
    n = len(tables.exit_rate)
    if isinstance(start, np.ndarray):
        state = rng.choice(n, size=size, p=start)
    else:
        state = np.full(size, start, dtype=np.int64)
    time = np.zeros(size)

    active = np.arange(size)
    while active.size:
        rates = tables.exit_rate[state[active]]
        moving = rates > 0
        active, rates = active[moving], rates[moving]
        if not active.size:
            break
        time[active] += rng.exponential(size=active.size) / rates
        active = active[time[active] <= T]
        if not active.size:
            break
        state[active] = tables.next_state(state[active], rng.random(active.size))
    return state


def empirical_distribution(net: StateNetwork, config: SimulationConfig) -> EmpiricalDistribution:
    """
    Оценка Монте-Карло для p_T и стандартные ошибки sqrt(p(1-p)/n).

    Траектории считаются векторизованными пачками по SIM_CHUNK с ГСЧ
    default_rng([seed, 1, номер пачки]), поэтому k-я траектория пачки не
    совпадает с simulate_trajectory(net, start, T, seed, index=k), у которой
    ключ [seed, 0, index]. Результат зависит от seed и SIM_CHUNK, но не от THREADS.
    """
    T = _check_horizon(config.horizon)
    tables = JumpTables(net)
    if isinstance(config.start, int):
        start: int | np.ndarray = net.index_of(config.start)
    else:
        start = as_probability_vector(config.start, net.size)
        start = start / start.sum()

    total = config.trajectories
    chunk_size = max(1, settings.SIM_CHUNK)
    chunks = [
        (k, min(chunk_size, total - k * chunk_size))
        for k in range(math.ceil(total / chunk_size))
    ]
    logger.info(f"Simulating {total} trajectories up to T={T} in {len(chunks)} chunks")

    finals = ordered_map(
        lambda item: _simulate_chunk(tables, start, T, config.seed, item[0], item[1]),
        chunks,
    )
    counts = np.bincount(np.concatenate(finals), minlength=net.size)
    estimate = counts / total
    stderr = np.sqrt(estimate * (1.0 - estimate) / total)
    return EmpiricalDistribution(
        estimate=tuple(float(x) for x in estimate),
        stderr=tuple(float(x) for x in stderr),
        trajectories=total,
        horizon=T,
        seed=config.seed,
    )
