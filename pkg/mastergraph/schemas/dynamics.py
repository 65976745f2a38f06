# mastergraph/schemas/dynamics.py
from enum import Enum
from typing import Optional, Union
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from mastergraph.config import settings
from mastergraph.schemas.structure import StateSet


class BasisMethod(str, Enum):
    TREES = "trees"
    NULLSPACE = "nullspace"


class SteadyStateBasis(BaseModel):
    """Базис стационарных состояний, по одному вектору на минимальное поглощающее множество"""
    model_config = ConfigDict(frozen=True)

    vectors: tuple[tuple[float, ...], ...]
    supports: tuple[StateSet, ...]
    methods: tuple[BasisMethod, ...]

    @model_validator(mode="after")
    def _check(self) -> "SteadyStateBasis":
        if not (len(self.vectors) == len(self.supports) == len(self.methods)):
            raise ValueError("vectors, supports and methods must have equal length")
        claimed: set[int] = set()
        for vector, support in zip(self.vectors, self.supports):
            inside = set(support)
            if inside & claimed:
                raise ValueError("supports must be disjoint")
            claimed |= inside
            for k, value in enumerate(vector):
                if k in inside and not value > 0:
                    raise ValueError(f"basis vector must be strictly positive on its support (state {k})")
                if k not in inside and value != 0:
                    raise ValueError(f"basis vector must vanish outside its support (state {k})")
            if abs(math.fsum(vector) - 1.0) > settings.PROBABILITY_ATOL:
                raise ValueError("basis vectors must be normalized")
        return self

    @property
    def n(self) -> int:
        return len(self.vectors)


class LimitResult(BaseModel):
    """Предельное распределение p_inf = sum(lambda_i * p_i)"""
    model_config = ConfigDict(frozen=True)

    coefficients: tuple[float, ...]
    p_infinity: tuple[float, ...]

    @model_validator(mode="after")
    def _check(self) -> "LimitResult":
        if any(c < 0 for c in self.coefficients):
            raise ValueError("coefficients must be nonnegative")
        if abs(math.fsum(self.coefficients) - 1.0) > settings.PROBABILITY_ATOL:
            raise ValueError("coefficients must sum to 1")
        if abs(math.fsum(self.p_infinity) - 1.0) > settings.PROBABILITY_ATOL:
            raise ValueError("p_infinity must be normalized")
        return self


class PositivityBound(BaseModel):
    """Нижняя оценка элемента (e^{Gt})_{ij}"""
    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    t: float = Field(..., ge=0)
    d: Optional[int] = Field(None, description="Длина кратчайшего пути j -> i, None если пути нет")
    gamma_path: float = Field(..., description="Минимальное произведение интенсивностей по кратчайшим путям")
    log_gamma_path: Optional[float] = Field(None, description="Логарифм gamma_path, конечен и при исчезновении порядка произведения")
    gamma_min: float = Field(..., description="Минимальный диагональный элемент генератора")
    bound: float = Field(..., ge=0)

    @model_validator(mode="after")
    def _check(self) -> "PositivityBound":
        if self.i == self.j and (self.d != 0 or self.gamma_path != 1.0):
            raise ValueError("diagonal bound uses d = 0 and an empty product")
        if self.d is None and self.bound != 0:
            raise ValueError("bound must be 0 when no path exists")
        return self


class SpectralReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    eigenvalues_real: tuple[float, ...]
    eigenvalues_imag: tuple[float, ...]
    max_real_part: float
    zero_eigenvalues: int
    kernel_dimension: int


class SimulationConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    horizon: float = Field(..., gt=0, description="Горизонт T")
    trajectories: int = Field(..., ge=1)
    seed: int = Field(..., ge=0, lt=2**64)
    start: Union[int, tuple[float, ...]] = Field(
        ..., description="Индекс начального состояния или начальное распределение"
    )


class EmpiricalDistribution(BaseModel):
    model_config = ConfigDict(frozen=True)

    estimate: tuple[float, ...]
    stderr: tuple[float, ...]
    trajectories: int
    horizon: float
    seed: int
