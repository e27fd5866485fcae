"""Exact desk-scale simulation of a quantum algorithm for Betti numbers of
Vietoris-Rips complexes, checked against classical homology."""

from .combinadic import PascalTable, build_pascal, rank, unrank
from .complex import (
    DistanceMatrix,
    EpsilonGraph,
    InputValidationError,
    Simplex,
    SimplexSet,
    build_graph,
    clique_complex,
    enumerate_simplices,
    is_simplex,
)
from .homology import (
    BoundaryMatrix,
    ChainComplex,
    DiracOperator,
    Laplacian,
    SpectrumReport,
    betti_exact,
    boundary_matrix,
    chain_complex,
    dirac,
    exact_rank,
    laplacian,
    spectrum,
)
from .qsim import (
    SimConfig,
    end_to_end_betti,
    pe_distribution,
    quantum_count_betti,
    register_sizing,
    sample_outcomes,
    simulate_bbht_prep,
    simulate_cell,
)
from .resources import CostLedger, eq1_total, lgz_costs, state_prep_cost

__version__ = "0.1.0"
