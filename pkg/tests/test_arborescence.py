# tests/test_arborescence.py
import math

import numpy as np
import pytest

from mastergraph.config import settings
from mastergraph.core.arborescence import (
    count_in_trees,
    enumerate_in_trees,
    stationary_via_trees,
    tree_polynomial_via_cofactor,
)
from mastergraph.core.network_model import build_generator, make_network, parse_network
from mastergraph.core.steady_state import null_space_stationary
from mastergraph.exceptions import NotStronglyConnected, TooLarge


def test_fig6_trees_rooted_at_2(fig6_net):
    trees = enumerate_in_trees(fig6_net, "2")
    assert [t.edges for t in trees] == [((0, 1), (2, 1)), ((0, 2), (2, 1))]
    assert all(t.weight == 1.0 for t in trees)
    assert trees[0].parent == (1, 1, 1)


def test_fig6_tree_rooted_at_1(fig6_net):
    trees = enumerate_in_trees(fig6_net, "1")
    assert len(trees) == 1
    assert trees[0].to_json(fig6_net)["edges"] == [["2", "1"], ["3", "2"]]


def test_two_state_tree(two_state_net):
    trees = enumerate_in_trees(two_state_net, "1")
    assert [t.edges for t in trees] == [((1, 0),)]


def test_no_tree_is_empty_list():
    net = parse_network("1\t2\t1\n")
    assert enumerate_in_trees(net, "1") == []
    assert len(enumerate_in_trees(net, "2")) == 1


def test_enumeration_cap(cycle_net):
    with pytest.raises(TooLarge):
        enumerate_in_trees(cycle_net, "1", cap=2)


def test_tree_weights_are_rate_products():
    net = parse_network("1\t2\t2.0\n2\t3\t3.0\n3\t1\t5.0\n")
    (tree,) = enumerate_in_trees(net, "3")
    assert tree.weight == 6.0
    assert math.isclose(tree.log_weight, math.log(6.0))


def test_cofactor_examples(fig6_net):
    assert math.isclose(tree_polynomial_via_cofactor(fig6_net, "2"), 2.0, rel_tol=1e-12)
    net = parse_network("1\t2\t3.0\n2\t1\t7.0\n")
    assert math.isclose(tree_polynomial_via_cofactor(net, "1"), 7.0, rel_tol=1e-12)
    assert tree_polynomial_via_cofactor(make_network(["1", "2"], []), "1") == 0.0


def test_count_in_trees_complete_digraph():
    """Тест: у полного орграфа на n вершинах n^(n-2) деревьев на корень"""
    n = 5
    net = make_network([str(k) for k in range(n)], [(i, j, 0.5) for i in range(n) for j in range(n) if i != j])
    assert count_in_trees(net, 0) == n ** (n - 2)
    assert len(enumerate_in_trees(net, 0)) == n ** (n - 2)


def test_stationary_fig6(fig6_net):
    p = stationary_via_trees(fig6_net)
    assert np.allclose(p, [0.25, 0.5, 0.25], atol=1e-12, rtol=0)


def test_stationary_fig6_symbolic_rates():
    rates = {"12": 2.0, "21": 3.0, "13": 5.0, "32": 7.0}
    net = parse_network("".join(f"{k[0]}\t{k[1]}\t{v}\n" for k, v in rates.items()))
    expected = np.array([
        rates["32"] * rates["21"],
        rates["12"] * rates["32"] + rates["13"] * rates["32"],
        rates["21"] * rates["13"],
    ])
    assert np.allclose(stationary_via_trees(net), expected / expected.sum(), atol=1e-12, rtol=0)


def test_stationary_two_state():
    net = parse_network("1\t2\t3.0\n2\t1\t1.0\n")
    assert np.allclose(stationary_via_trees(net), [0.25, 0.75], atol=1e-14, rtol=0)


def test_stationary_requires_strong_connectivity(chain_net):
    with pytest.raises(NotStronglyConnected):
        stationary_via_trees(chain_net)


def test_stationary_single_state():
    assert stationary_via_trees(make_network(["x"], [])).tolist() == [1.0]


def test_stationary_in_log_space():
    """Тест: произведения интенсивностей выше 1e300 не дают переполнения"""
    net = parse_network("1\t2\t1e200\n2\t3\t1e200\n3\t1\t1.0\n")
    p = stationary_via_trees(net)
    assert np.all(np.isfinite(p))
    assert math.isclose(p.sum(), 1.0, rel_tol=1e-12)
    assert math.isclose(p[0], 1e-200, rel_tol=1e-9)
    assert math.isclose(p[2], 1.0, rel_tol=1e-12)


def test_stationary_with_vanishing_rates():
    """Тест: произведения ниже наименьшего нормального float тоже считаются в логарифмах"""
    cycle = parse_network("1\t2\t1e-200\n2\t3\t1e-200\n3\t1\t1e-200\n")
    assert np.allclose(stationary_via_trees(cycle), [1 / 3] * 3, atol=1e-15, rtol=0)

    net = parse_network("1\t2\t1e-200\n2\t3\t1e-200\n3\t1\t1.0\n")
    p = stationary_via_trees(net)
    assert np.all(np.isfinite(p)) and np.all(p > 0)
    assert math.isclose(p[0], 0.5, rel_tol=1e-12)
    assert math.isclose(p[1], 0.5, rel_tol=1e-12)
    assert math.isclose(p[2], 5e-201, rel_tol=1e-9)


def test_cofactor_route_matches_enumeration(strongly_connected_network):
    rng = np.random.default_rng(31)
    for _ in range(20):
        net = strongly_connected_network(rng, int(rng.integers(3, 8)))
        enumerated = stationary_via_trees(net)
        via_cofactors = stationary_via_trees(net, cap=1)
        assert np.abs(enumerated - via_cofactors).sum() <= 1e-10


def test_tree_theorem_on_random_nets(strongly_connected_network):
    """Тест: сумма весов деревьев = минор, формула деревьев = ядро Г"""
    rng = np.random.default_rng(37)
    for _ in range(100):
        net = strongly_connected_network(rng, int(rng.integers(1, 8)))
        for root in range(net.size):
            total = math.fsum(t.weight for t in enumerate_in_trees(net, root))
            cofactor = tree_polynomial_via_cofactor(net, root)
            assert math.isclose(total, cofactor, rel_tol=1e-10)

        p = stationary_via_trees(net)
        assert np.all(p > 0)
        assert np.abs(p - null_space_stationary(net)).sum() <= 1e-9
        gamma = build_generator(net)
        assert np.abs(gamma @ p).max() <= 1e-10 * max(np.abs(gamma).max(), 1.0)


def test_symmetric_rates_give_uniform_state(symmetric_network):
    rng = np.random.default_rng(41)
    for _ in range(20):
        net = symmetric_network(rng, int(rng.integers(2, 8)))
        p = stationary_via_trees(net)
        assert np.abs(p - 1.0 / net.size).max() <= 1e-12


def test_stationary_independent_of_threads(strongly_connected_network, monkeypatch):
    rng = np.random.default_rng(43)
    nets = [strongly_connected_network(rng, int(rng.integers(2, 8))) for _ in range(10)]
    sequential = [stationary_via_trees(net) for net in nets]
    monkeypatch.setattr(settings, "THREADS", 4)
    for net, expected in zip(nets, sequential):
        assert np.array_equal(stationary_via_trees(net), expected)
