"""Protecting-gateway-set routing engine and scaling model."""

from ._optic import (  # noqa: F401
    ParameterError,
    ParseError,
    class_expected_distinct_sets,
    expected_distinct_sets,
    lower_bound_distinct_sets,
    monte_carlo_distinct_sets,
    run_fuzz,
    run_scenario,
    set_size_probability,
    spf_distances,
    table2_preset,
    table2_preset_names,
    two_disjoint_paths,
)

__all__ = [
    "ParameterError",
    "ParseError",
    "class_expected_distinct_sets",
    "expected_distinct_sets",
    "lower_bound_distinct_sets",
    "monte_carlo_distinct_sets",
    "run_fuzz",
    "run_scenario",
    "set_size_probability",
    "spf_distances",
    "table2_preset",
    "table2_preset_names",
    "two_disjoint_paths",
]
