from mastergraph.schemas.network import Edge, NetworkFormat, NetworkSummary, State, StateNetwork
from mastergraph.schemas.structure import (
    BlockPermutation,
    Condensation,
    ConnectivityClass,
    DominanceReport,
    InTree,
    RowClass,
    StateSet,
)
from mastergraph.schemas.dynamics import (
    BasisMethod,
    EmpiricalDistribution,
    LimitResult,
    PositivityBound,
    SimulationConfig,
    SpectralReport,
    SteadyStateBasis,
)
from mastergraph.schemas.report import (
    AnalysisReport,
    BasisEntry,
    EvolveReport,
    RootTrees,
    SteadyReport,
    TreesReport,
)

__all__ = [
    "Edge", "NetworkFormat", "NetworkSummary", "State", "StateNetwork",
    "BlockPermutation", "Condensation", "ConnectivityClass", "DominanceReport",
    "InTree", "RowClass", "StateSet",
    "BasisMethod", "EmpiricalDistribution", "LimitResult", "PositivityBound",
    "SimulationConfig", "SpectralReport", "SteadyStateBasis",
    "AnalysisReport", "BasisEntry", "EvolveReport", "RootTrees", "SteadyReport", "TreesReport",
]
