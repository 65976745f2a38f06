# mastergraph/schemas/report.py
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from mastergraph.schemas.network import NetworkSummary
from mastergraph.schemas.structure import ConnectivityClass, DominanceReport


class BasisEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    support: list[str] = Field(..., description="Метки состояний минимального поглощающего множества")
    vector: list[float] = Field(..., description="Стационарный вектор по всем состояниям")


class SteadyReport(BaseModel):
    """Ответ команды steady"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    states: list[str] = Field(..., description="Метки состояний, порядок компонент векторов")
    n: int
    relaxing: bool
    basis: list[BasisEntry]
    lambda_: Optional[list[float]] = Field(None, alias="lambda")
    p_infinity: Optional[list[float]] = None


class AnalysisReport(BaseModel):
    """Полный отчёт команды analyze"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    network: NetworkSummary
    states: list[str]
    connectivity: ConnectivityClass
    condensation: dict
    minimal_absorbing_sets: list[list[str]]
    relaxing: bool
    kernel_dimension: int
    n: int
    basis: list[BasisEntry]
    lambda_: Optional[list[float]] = Field(None, alias="lambda")
    p_infinity: Optional[list[float]] = None
    dominance: Optional[DominanceReport] = Field(None, description="Сертификат WCDD для Г_{B0}, если M > 0")
    timings_ms: dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check(self) -> "AnalysisReport":
        if not (self.n == len(self.minimal_absorbing_sets) == len(self.basis) == self.kernel_dimension):
            raise ValueError("n, minimal absorbing sets, basis and kernel dimension disagree")
        if self.relaxing != (self.n == 1):
            raise ValueError("relaxing must mean exactly one minimal absorbing set")
        return self


class RootTrees(BaseModel):
    model_config = ConfigDict(frozen=True)

    root: str
    count: int
    cofactor: float = Field(..., description="Главный минор -Г без корня")
    trees: list[dict]


class TreesReport(BaseModel):
    """Ответ команды trees"""
    model_config = ConfigDict(frozen=True)

    roots: list[RootTrees]
    stationary: Optional[list[float]] = Field(None, description="Только для сильно связной сети")


class EvolveReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    p_t: list[float]
