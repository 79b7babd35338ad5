"""Vertex and edge participation in cliques, generalised rich clubs, and
iterative SUpernode extraction."""

__version__ = "0.1.0"

from .census import (  # noqa: E402
    ParticipationTable,
    brute_force_census,
    exact_census,
    median_pair_weight,
    pseudo_census,
)
from .clubs import (  # noqa: E402
    ClubReport,
    edge_club,
    rich_club,
    select_threshold_for_size,
    super_rich_club,
    weighted_participation_coefficient,
)
from .graph import Graph, density, from_dense_matrix, from_edge_list  # noqa: E402
from .pipeline import PercentileSchedule, percentile_value, run_iteration, run_pipeline  # noqa: E402

__all__ = [
    "Graph",
    "density",
    "from_edge_list",
    "from_dense_matrix",
    "ParticipationTable",
    "exact_census",
    "pseudo_census",
    "median_pair_weight",
    "brute_force_census",
    "ClubReport",
    "rich_club",
    "super_rich_club",
    "edge_club",
    "weighted_participation_coefficient",
    "select_threshold_for_size",
    "PercentileSchedule",
    "percentile_value",
    "run_iteration",
    "run_pipeline",
]
