# mastergraph/core/__init__.py
from mastergraph.core.network_model import (
    adjacency_matrix,
    as_probability_vector,
    build_generator,
    parse_network,
    point_mass,
    serialize_network,
    subnetwork,
    uniform_distribution,
)
from mastergraph.core.connectivity import (
    classify_connectivity,
    condense,
    is_absorbing,
    is_irreducible_adjacency,
    minimal_absorbing_sets,
    reach_from,
    reach_to,
)
from mastergraph.core.diagonal_dominance import (
    certify_transient_invertible,
    classify_dominance,
    transient_block,
)
from mastergraph.core.arborescence import (
    count_in_trees,
    enumerate_in_trees,
    stationary_via_trees,
    tree_polynomial_via_cofactor,
)
from mastergraph.core.steady_state import (
    block_permutation,
    is_relaxing,
    kernel_dimension,
    limit_distribution,
    steady_state_basis,
)
from mastergraph.core.evolution import (
    evolve,
    positivity_lower_bound,
    solution_operator,
    spectral_sanity,
)
from mastergraph.core.stochastic_oracle import (
    empirical_distribution,
    simulate_trajectory,
    trajectory_path,
)

__all__ = [
    "adjacency_matrix", "as_probability_vector", "build_generator", "parse_network",
    "point_mass", "serialize_network", "subnetwork", "uniform_distribution",
    "classify_connectivity", "condense", "is_absorbing", "is_irreducible_adjacency",
    "minimal_absorbing_sets", "reach_from", "reach_to",
    "certify_transient_invertible", "classify_dominance", "transient_block",
    "count_in_trees", "enumerate_in_trees", "stationary_via_trees", "tree_polynomial_via_cofactor",
    "block_permutation", "is_relaxing", "kernel_dimension", "limit_distribution", "steady_state_basis",
    "evolve", "positivity_lower_bound", "solution_operator", "spectral_sanity",
    "empirical_distribution", "simulate_trajectory", "trajectory_path",
]
