"""Rainbow k-factor lab: spectral and combinatorial machinery for families
of balanced bipartite graphs at desk scale."""

from .construction import construct_rainbow_factor_extremal, repair_multiedges
from .factors import (
    ABSENT,
    BUDGET_EXHAUSTED,
    FOUND,
    MatchingSchedule,
    RainbowFactor,
    SearchResult,
    audit_shifted_family,
    diagonal_matching_schedule,
    k_factor_exists,
    rainbow_k_factor_search,
    rainbow_perfect_matching_search,
)
from .graphs import (
    BipartiteGraph,
    ExtremalParams,
    GraphError,
    GraphFamily,
    bowtie_join,
    build_complete_bipartite,
    build_extremal,
    build_join,
    induced_delete_vertex,
    is_extremal_isomorphic,
    labeled_extremal_copy,
    quasi_complement,
)
from .harness import (
    CAMPAIGNS,
    CampaignReport,
    ExperimentConfig,
    generate_extremal_variant_family,
    generate_random_bipartite,
    run_campaign,
)
from .shifting import ShiftTrace, bi_shift_fixpoint, is_bi_shifted, xy_shift
from .spectral import (
    ConvergenceError,
    InconsistencyError,
    QuotientMatrix4,
    SpectralMargin,
    SpectralReport,
    extremal_charpoly,
    extremal_spectral_radius,
    join_charpoly,
    join_margin,
    largest_biquadratic_root,
    quotient_matrix,
    spectral_radius,
)

__all__ = [
    "ABSENT",
    "BUDGET_EXHAUSTED",
    "CAMPAIGNS",
    "FOUND",
    "BipartiteGraph",
    "CampaignReport",
    "ConvergenceError",
    "ExperimentConfig",
    "ExtremalParams",
    "GraphError",
    "GraphFamily",
    "InconsistencyError",
    "MatchingSchedule",
    "QuotientMatrix4",
    "RainbowFactor",
    "SearchResult",
    "ShiftTrace",
    "SpectralMargin",
    "SpectralReport",
    "audit_shifted_family",
    "bi_shift_fixpoint",
    "bowtie_join",
    "build_complete_bipartite",
    "build_extremal",
    "build_join",
    "construct_rainbow_factor_extremal",
    "diagonal_matching_schedule",
    "extremal_charpoly",
    "extremal_spectral_radius",
    "generate_extremal_variant_family",
    "generate_random_bipartite",
    "induced_delete_vertex",
    "is_bi_shifted",
    "is_extremal_isomorphic",
    "join_charpoly",
    "join_margin",
    "k_factor_exists",
    "labeled_extremal_copy",
    "largest_biquadratic_root",
    "quasi_complement",
    "quotient_matrix",
    "rainbow_k_factor_search",
    "rainbow_perfect_matching_search",
    "repair_multiedges",
    "run_campaign",
    "spectral_radius",
    "xy_shift",
]

__version__ = "0.1.0"
