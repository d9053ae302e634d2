"""Moments and concentration diagnostics for monochromatic edge counts
under uniform random colorings with fixed class sizes."""

from .coloring import (
    Composition,
    EdgeCounts,
    count,
    imbalance,
    prob_distinct_colors,
    prob_fixed_colors,
    sample,
)
from .graph import (
    Graph,
    GraphStats,
    complete,
    cycle,
    disjoint_union,
    graph_from_spec,
    load_edge_list,
    path,
    regular_circulant,
    save_edge_list,
    star,
    stats,
    threshold_graph,
    zeta_squared,
)
from .moments import (
    MomentReport,
    coefficients_ab,
    full_report,
    mean_M_L,
    mean_Mi,
    pz_lower_bound,
    rho,
    var_Mi,
    var_common,
)
from .oracle import (
    BudgetExceededError,
    ExactDistribution,
    enumerate_colorings,
    event_frequency,
    exact_moments,
)
from .randgraph import (
    ChungLu,
    ConfigModel,
    DegreeLaw,
    GeometricTorus,
    Gnp,
    assumption_star_check,
    generate,
    parse_model,
    ratio_closed_form,
    ratio_monte_carlo,
    star_like,
)
from .experiments import FamilySpec, RegimeRow, emit, run_comparison, run_regime
from .seeds import stream
from .symfun import elementary_symmetric, falling_factorial, power_sum

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ChungLu",
    "Composition",
    "ConfigModel",
    "DegreeLaw",
    "EdgeCounts",
    "ExactDistribution",
    "FamilySpec",
    "GeometricTorus",
    "Gnp",
    "Graph",
    "GraphStats",
    "MomentReport",
    "RegimeRow",
    "assumption_star_check",
    "coefficients_ab",
    "complete",
    "count",
    "cycle",
    "disjoint_union",
    "elementary_symmetric",
    "emit",
    "enumerate_colorings",
    "event_frequency",
    "exact_moments",
    "falling_factorial",
    "full_report",
    "generate",
    "graph_from_spec",
    "imbalance",
    "load_edge_list",
    "mean_M_L",
    "mean_Mi",
    "parse_model",
    "path",
    "power_sum",
    "prob_distinct_colors",
    "prob_fixed_colors",
    "pz_lower_bound",
    "ratio_closed_form",
    "ratio_monte_carlo",
    "regular_circulant",
    "rho",
    "run_comparison",
    "run_regime",
    "sample",
    "save_edge_list",
    "star",
    "star_like",
    "stats",
    "stream",
    "threshold_graph",
    "var_Mi",
    "var_common",
    "zeta_squared",
]
