# mastergraph/schemas/network.py
from enum import Enum
from typing import Iterable, Optional, Sequence, Union
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from mastergraph.exceptions import (
    DuplicateEdge,
    IndexOutOfRange,
    MalformedLine,
    NonPositiveRate,
    SelfLoop,
)

State = Union[int, str]


class NetworkFormat(str, Enum):
    EDGE_LIST = "edge_list"
    JSON = "json"


class Edge(BaseModel):
    model_config = ConfigDict(frozen=True)

    src: int = Field(..., description="Индекс исходного состояния")
    dst: int = Field(..., description="Индекс целевого состояния")
    rate: float = Field(..., description="Интенсивность перехода, 1/время")


def check_network(
    states: Sequence[str],
    edges: Iterable[Edge],
    lines: Optional[Sequence[Optional[int]]] = None,
) -> None:
    """Проверить инварианты сети, lines: номера строк для сообщений"""
    if len(states) < 1:
        raise MalformedLine("network must contain at least one state")
    if len(set(states)) != len(states):
        raise MalformedLine("state labels must be unique")

    n = len(states)
    seen: set[tuple[int, int]] = set()
    for k, edge in enumerate(edges):
        line = lines[k] if lines is not None else None
        if not (0 <= edge.src < n and 0 <= edge.dst < n):
            raise IndexOutOfRange(f"edge {edge.src}->{edge.dst} refers to a missing state")
        if edge.src == edge.dst:
            raise SelfLoop(f"self-loop on state {states[edge.src]!r} is not allowed", line)
        if not math.isfinite(edge.rate) or edge.rate <= 0:
            raise NonPositiveRate(
                f"rate of {states[edge.src]!r}->{states[edge.dst]!r} must be positive and finite, got {edge.rate}",
                line,
            )
        if (edge.src, edge.dst) in seen:
            raise DuplicateEdge(
                f"duplicate edge {states[edge.src]!r}->{states[edge.dst]!r}", line
            )
        seen.add((edge.src, edge.dst))


class StateNetwork(BaseModel):
    """Сеть переходов: состояния и взвешенные направленные рёбра"""
    model_config = ConfigDict(frozen=True)

    states: tuple[str, ...] = Field(..., description="Метки состояний в порядке появления")
    edges: tuple[Edge, ...] = Field(default=(), description="Рёбра (src, dst, rate)")

    @model_validator(mode="after")
    def _check(self) -> "StateNetwork":
        check_network(self.states, self.edges)
        return self

    @property
    def size(self) -> int:
        return len(self.states)

    def index_of(self, state: State) -> int:
        """Индекс состояния: индекс (int) или метка (str)"""
        if isinstance(state, bool):
            raise IndexOutOfRange(f"invalid state {state!r}")
        if isinstance(state, int):
            if not 0 <= state < self.size:
                raise IndexOutOfRange(f"state index {state} outside [0, {self.size})")
            return state
        try:
            return self.states.index(state)
        except ValueError:
            raise IndexOutOfRange(f"unknown state label {state!r}") from None

    def labels(self, indices: Iterable[int]) -> list[str]:
        return [self.states[i] for i in indices]


class NetworkSummary(BaseModel):
    states: int = Field(..., description="Число состояний N")
    edges: int = Field(..., description="Число рёбер |E|")
