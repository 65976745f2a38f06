# tests/test_stochastic_oracle.py
import numpy as np
import pytest

from mastergraph.config import settings
from mastergraph.core.connectivity import minimal_absorbing_sets
from mastergraph.core.evolution import evolve
from mastergraph.core.network_model import as_probability_vector, make_network, point_mass
from mastergraph.core.steady_state import limit_distribution
from mastergraph.core.stochastic_oracle import (
    empirical_distribution,
    simulate_trajectory,
    trajectory_path,
)
from mastergraph.exceptions import NegativeTime
from mastergraph.schemas.dynamics import SimulationConfig


def within_sigma(estimate, exact, n, k=4.0):
    exact = np.clip(np.asarray(exact), 0.0, 1.0)
    tolerance = k * np.sqrt(exact * (1.0 - exact) / n) + 3.0 / n
    return np.abs(np.asarray(estimate) - exact) <= tolerance


def test_two_state_equilibrium(two_state_net):
    config = SimulationConfig(horizon=20.0, trajectories=100_000, seed=1, start=0)
    result = empirical_distribution(two_state_net, config)
    assert np.abs(np.array(result.estimate) - 0.5).max() <= 0.01
    assert result.trajectories == 100_000
    assert np.allclose(result.stderr, np.sqrt(np.array(result.estimate) * (1 - np.array(result.estimate)) / 100_000))


def test_start_in_sink_keeps_all_mass(fig2_net):
    config = SimulationConfig(horizon=30.0, trajectories=5_000, seed=3, start=3)
    result = empirical_distribution(fig2_net, config)
    outside = [x for k, x in enumerate(result.estimate) if k not in (3, 4)]
    assert outside == [0.0] * 6
    assert result.estimate[3] + result.estimate[4] == pytest.approx(1.0, abs=1e-15)


def test_fig2_matches_limit_distribution(fig2_net):
    p0 = point_mass(fig2_net, "1")
    exact = limit_distribution(fig2_net, p0).p_infinity
    config = SimulationConfig(horizon=100.0, trajectories=100_000, seed=2024, start=0)
    result = empirical_distribution(fig2_net, config)
    assert within_sigma(result.estimate, exact, 100_000).all()
    assert result.estimate[0] == 0.0 and result.estimate[1] == 0.0


def test_start_distribution(two_state_net):
    config = SimulationConfig(horizon=0.001, trajectories=20_000, seed=5, start=(0.25, 0.75))
    result = empirical_distribution(two_state_net, config)
    assert within_sigma(result.estimate, evolve(two_state_net, [0.25, 0.75], 0.001), 20_000).all()


def test_reproducible_regardless_of_threads(fig2_net, monkeypatch):
    config = SimulationConfig(horizon=10.0, trajectories=3 * settings.SIM_CHUNK + 17, seed=99, start=0)
    first = empirical_distribution(fig2_net, config)
    assert empirical_distribution(fig2_net, config) == first
    monkeypatch.setattr(settings, "THREADS", 4)
    assert empirical_distribution(fig2_net, config) == first


def test_different_seeds_differ(fig2_net):
    a = empirical_distribution(fig2_net, SimulationConfig(horizon=5.0, trajectories=2_000, seed=1, start=0))
    b = empirical_distribution(fig2_net, SimulationConfig(horizon=5.0, trajectories=2_000, seed=2, start=0))
    assert a.estimate != b.estimate


def test_absorbing_singleton_never_moves(fig2_net):
    for seed in range(20):
        assert simulate_trajectory(fig2_net, "3", 1e6, seed) == 2


def test_chain_ends_in_terminal_state(chain_net):
    finals = [simulate_trajectory(chain_net, "1", 200.0, 7, index=k) for k in range(200)]
    assert set(finals) == {2}


def test_fig2_leaves_transient_states(fig2_net):
    finals = {simulate_trajectory(fig2_net, "1", 100.0, 11, index=k) for k in range(300)}
    assert finals <= {2, 3, 4, 5, 6, 7}


def test_trajectory_is_reproducible(fig2_net):
    assert trajectory_path(fig2_net, "1", 10.0, 42, index=3) == trajectory_path(fig2_net, "1", 10.0, 42, index=3)
    assert trajectory_path(fig2_net, "1", 10.0, 42, index=3) != trajectory_path(fig2_net, "1", 10.0, 42, index=4)


def test_mass_confinement(fig2_net, random_network):
    """Тест: траектория из поглощающего множества не покидает его"""
    nets = [fig2_net] + [random_network(np.random.default_rng(s), 8, p=0.3) for s in range(10)]
    for net in nets:
        for sink in minimal_absorbing_sets(net):
            for index in range(20):
                path = trajectory_path(net, sink[0], 20.0, 5, index=index)
                assert {state for _, state in path} <= set(sink)
                times = [time for time, _ in path]
                assert times == sorted(times) and times[-1] <= 20.0


def test_negative_horizon(two_state_net):
    with pytest.raises(NegativeTime):
        simulate_trajectory(two_state_net, "1", -1.0, 0)


def test_config_validation():
    with pytest.raises(ValueError):
        SimulationConfig(horizon=0.0, trajectories=10, seed=0, start=0)
    with pytest.raises(ValueError):
        SimulationConfig(horizon=1.0, trajectories=0, seed=0, start=0)


def test_agreement_with_evolution(random_network):
    """Тест: оценка Гиллеспи совпадает с e^{ГT} p0 в пределах 4 sigma"""
    rng = np.random.default_rng(314)
    for k in range(20):
        net = random_network(rng, int(rng.integers(2, 9)))
        p0 = as_probability_vector(rng.dirichlet(np.ones(net.size)), net.size)
        config = SimulationConfig(horizon=50.0, trajectories=50_000, seed=k, start=tuple(float(x) for x in p0))
        result = empirical_distribution(net, config)
        assert within_sigma(result.estimate, evolve(net, p0, 50.0), 50_000).all()


def test_isolated_state_network():
    net = make_network(["a", "b"], [])
    config = SimulationConfig(horizon=1.0, trajectories=100, seed=0, start=1)
    assert empirical_distribution(net, config).estimate == (0.0, 1.0)
