"""Virtual-cell DAS downlink rate analysis."""

from ._vcdas import (
    ExperimentConfig,
    Topology,
    bound_table,
    comparison,
    comparison_summary,
    estimate_upper_bound,
    exp_e1,
    form_virtual_cells,
    generate_topology,
    group_users,
    grouping_sweep,
    mean_nearest_user_distance,
    mrt_power_fractions,
    mrt_rates,
    mrt_sweep,
    optimal_v,
    optimal_v_exact,
    pairwise_gains,
    single_topology,
    upper_incomplete_gamma,
    vstar,
    zf_precoders,
)

__all__ = [
    "ExperimentConfig",
    "Topology",
    "bound_table",
    "comparison",
    "comparison_summary",
    "estimate_upper_bound",
    "exp_e1",
    "form_virtual_cells",
    "generate_topology",
    "group_users",
    "grouping_sweep",
    "mean_nearest_user_distance",
    "mrt_power_fractions",
    "mrt_rates",
    "mrt_sweep",
    "optimal_v",
    "optimal_v_exact",
    "pairwise_gains",
    "single_topology",
    "upper_incomplete_gamma",
    "vstar",
    "zf_precoders",
]
