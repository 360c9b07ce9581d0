"""Generation, verification and randomness certification for tripartite Hardy correlations."""

from ._hardy import (
    DomainError,
    behavior_index,
    born_behavior,
    certified_bits,
    check_behavior,
    classify_point,
    guessing_probability,
    hardy_behavior,
    hardy_probability,
    hessian,
    in_domain,
    max_hardy_fully_local,
    max_hardy_nsbl,
    named_points,
    npa_bits,
    npa_max_hardy,
    nsbl_strategy_count,
    omega,
    self_test_region,
)

__all__ = [
    "DomainError",
    "behavior_index",
    "born_behavior",
    "certified_bits",
    "check_behavior",
    "classify_point",
    "guessing_probability",
    "hardy_behavior",
    "hardy_probability",
    "hessian",
    "in_domain",
    "max_hardy_fully_local",
    "max_hardy_nsbl",
    "named_points",
    "npa_bits",
    "npa_max_hardy",
    "nsbl_strategy_count",
    "omega",
    "self_test_region",
]
