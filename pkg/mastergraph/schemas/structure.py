# mastergraph/schemas/structure.py
from enum import Enum
from typing import Literal, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mastergraph.schemas.network import StateNetwork

StateSet = tuple[int, ...]


def state_set(indices) -> StateSet:
    """Отсортированный набор уникальных индексов"""
    return tuple(sorted(set(int(i) for i in indices)))


class ConnectivityClass(str, Enum):
    STRONG = "strong"
    UNILATERAL = "unilateral"
    WEAK = "weak"
    DISCONNECTED = "disconnected"


class Condensation(BaseModel):
    """Разбиение на компоненты сильной связности и DAG макросостояний"""
    model_config = ConfigDict(frozen=True)

    components: tuple[StateSet, ...]
    dag_edges: tuple[tuple[int, int], ...]
    sink_components: tuple[int, ...]

    @model_validator(mode="after")
    def _check(self) -> "Condensation":
        members = [i for component in self.components for i in component]
        if sorted(members) != list(range(len(members))):
            raise ValueError("components must partition the state indices")

        dag = nx.DiGraph()
        dag.add_nodes_from(range(len(self.components)))
        for a, b in self.dag_edges:
            if a == b:
                raise ValueError("dag edges must join distinct components")
            dag.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(dag):
            raise ValueError("condensation graph must be acyclic")

        sinks = tuple(c for c in dag.nodes if dag.out_degree(c) == 0)
        if tuple(sorted(self.sink_components)) != sinks:
            raise ValueError("sink components must be exactly the components without outgoing edges")
        return self

    @property
    def sinks(self) -> list[StateSet]:
        return [self.components[c] for c in self.sink_components]

    def to_json(self, net: StateNetwork) -> dict:
        return {
            "components": [net.labels(c) for c in self.components],
            "dag_edges": [list(e) for e in self.dag_edges],
            "sinks": list(self.sink_components),
        }


class RowClass(str, Enum):
    SDD = "SDD"
    WDD_ONLY = "WDD_only"
    VIOLATING = "violating"


class DominanceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    row_class: tuple[RowClass, ...]
    is_wdd: bool
    is_sdd: bool
    is_wcdd: bool
    chain_witness: tuple[Optional[tuple[int, ...]], ...] = Field(
        ..., description="Путь к SDD-строке для каждой не-SDD строки"
    )
    orientation: Literal["rows", "columns"] = "rows"
    condition_estimate: Optional[float] = None
    min_scaled_singular_value: Optional[float] = None

    @model_validator(mode="after")
    def _check(self) -> "DominanceReport":
        if self.is_sdd and not self.is_wcdd:
            raise ValueError("SDD implies WCDD")
        if self.is_wcdd and not self.is_wdd:
            raise ValueError("WCDD implies WDD")
        return self


class InTree(BaseModel):
    """Остовное входящее дерево (анти-арборесценция)"""
    model_config = ConfigDict(frozen=True)

    size: int = Field(..., ge=1, description="Число состояний сети")
    root: int
    edges: tuple[tuple[int, int], ...] = Field(..., description="Рёбра (i, j), i -> j, по возрастанию i")
    weight: float
    log_weight: float

    @model_validator(mode="after")
    def _check(self) -> "InTree":
        if len(self.edges) != self.size - 1:
            raise ValueError(f"in-tree over {self.size} states needs {self.size - 1} edges")
        parent: dict[int, int] = {}
        for src, dst in self.edges:
            if src in parent:
                raise ValueError(f"state {src} has more than one outgoing tree edge")
            parent[src] = dst
        if self.root in parent:
            raise ValueError("root must not have an outgoing tree edge")
        if set(parent) != set(range(self.size)) - {self.root}:
            raise ValueError("every non-root state needs exactly one outgoing tree edge")
        for start in parent:
            node, steps = start, 0
            while node != self.root:
                node = parent[node]
                steps += 1
                if steps > self.size:
                    raise ValueError("tree edges contain a cycle")
        return self

    @property
    def parent(self) -> tuple[int, ...]:
        """Вектор родителей, у корня родитель равен ему самому"""
        result = [self.root] * self.size
        for src, dst in self.edges:
            result[src] = dst
        return tuple(result)

    def to_json(self, net: StateNetwork) -> dict:
        return {
            "root": net.states[self.root],
            "edges": [[net.states[a], net.states[b]] for a, b in self.edges],
            "weight": self.weight,
        }


class BlockPermutation(BaseModel):
    """Перенумерация: сначала переходные состояния, затем минимальные поглощающие множества"""
    model_config = ConfigDict(frozen=True)

    order: tuple[int, ...]
    block_sizes: tuple[int, ...] = Field(..., description="[M, |B_1|, ..., |B_n|]")

    @model_validator(mode="after")
    def _check(self) -> "BlockPermutation":
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("order must be a permutation of the state indices")
        if sum(self.block_sizes) != len(self.order):
            raise ValueError("block sizes must add up to the number of states")
        if any(size < 1 for size in self.block_sizes[1:]):
            raise ValueError("absorbing blocks must be nonempty")
        return self

    @property
    def transient_count(self) -> int:
        return self.block_sizes[0]

    def blocks(self) -> list[tuple[int, ...]]:
        """Блоки B_0, B_1, ..., B_n в новой нумерации"""
        result, start = [], 0
        for size in self.block_sizes:
            result.append(self.order[start:start + size])
            start += size
        return result
