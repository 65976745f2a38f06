# tests/conftest.py
import json

import numpy as np
import pytest

from mastergraph.core.network_model import make_network, parse_network
from mastergraph.schemas.network import StateNetwork

FIG2_EDGES = [
    ("1", "2"), ("2", "1"), ("1", "3"), ("1", "4"), ("2", "6"),
    ("4", "5"), ("5", "4"), ("6", "7"), ("7", "8"), ("8", "6"),
]

FIG6_EDGES = [("1", "2"), ("2", "1"), ("1", "3"), ("3", "2")]


def edge_list_text(edges, rates=None) -> str:
    rates = rates or {}
    return "".join(f"{a}\t{b}\t{rates.get((a, b), 1.0)}\n" for a, b in edges)


def json_text(edges, states=None, rates=None) -> str:
    rates = rates or {}
    payload = {"edges": [{"src": a, "dst": b, "rate": rates.get((a, b), 1.0)} for a, b in edges]}
    if states is not None:
        payload["states"] = list(states)
    return json.dumps(payload)


def _random_network(rng: np.random.Generator, n: int, p: float = 0.25) -> StateNetwork:
    """Случайный орграф с интенсивностями из (0, 2]"""
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                edges.append((i, j, 2.0 - rng.uniform(0.0, 2.0)))
    return make_network([f"s{k}" for k in range(n)], edges)


def _strongly_connected_network(
    rng: np.random.Generator,
    n: int,
    p: float = 0.3,
    low: float = 0.5,
    high: float = 2.0,
) -> StateNetwork:
    """Случайный цикл через все состояния плюс случайные хорды"""
    order = rng.permutation(n)
    pairs = {(int(order[k]), int(order[(k + 1) % n])) for k in range(n)} if n > 1 else set()
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                pairs.add((i, j))
    edges = [(i, j, rng.uniform(low, high)) for i, j in sorted(pairs)]
    return make_network([f"s{k}" for k in range(n)], edges)


def _symmetric_network(rng: np.random.Generator, n: int, p: float = 0.4) -> StateNetwork:
    """Связная сеть с равными интенсивностями в обе стороны"""
    order = rng.permutation(n)
    pairs = {tuple(sorted((int(order[k]), int(order[k + 1])))) for k in range(n - 1)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                pairs.add((i, j))
    edges = []
    for i, j in sorted(pairs):
        rate = rng.uniform(0.1, 5.0)
        edges += [(i, j, rate), (j, i, rate)]
    return make_network([f"s{k}" for k in range(n)], edges)


@pytest.fixture
def fig2_net() -> StateNetwork:
    # явный порядок состояний 1..8, чтобы индексы совпадали с номерами
    return parse_network(json_text(FIG2_EDGES, states=[str(k) for k in range(1, 9)]), "json")


@pytest.fixture
def fig6_net() -> StateNetwork:
    return parse_network(edge_list_text(FIG6_EDGES))


@pytest.fixture
def two_state_net() -> StateNetwork:
    return parse_network("1\t2\t1.0\n2\t1\t1.0\n")


@pytest.fixture
def chain_net() -> StateNetwork:
    return parse_network("1\t2\t1.0\n2\t3\t1.0\n")


@pytest.fixture
def cycle_net() -> StateNetwork:
    return parse_network("1\t2\t1.0\n2\t3\t1.0\n3\t1\t1.0\n")


@pytest.fixture
def fig2_path(tmp_path):
    path = tmp_path / "fig2.tsv"
    path.write_text(edge_list_text(FIG2_EDGES), encoding="utf-8")
    return path


@pytest.fixture
def fig6_path(tmp_path):
    path = tmp_path / "fig6.tsv"
    path.write_text(edge_list_text(FIG6_EDGES), encoding="utf-8")
    return path


@pytest.fixture
def random_network():
    return _random_network


@pytest.fixture
def strongly_connected_network():
    return _strongly_connected_network


@pytest.fixture
def symmetric_network():
    return _symmetric_network


@pytest.fixture
def fig2_with_rates():
    def build(rates: dict) -> StateNetwork:
        states = [str(k) for k in range(1, 9)]
        return parse_network(json_text(FIG2_EDGES, states=states, rates=rates), "json")
    return build
