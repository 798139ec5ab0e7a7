"""Symmetry-mismatch auditing and error lower bounds."""

from equiaudit._core import (
    Domain,
    audit,
    bound_report,
    classification_bound,
    classification_bound_finite_special,
    cli_run,
    domain_from_json,
    equivariant_orthogonal_bound_value,
    equivariant_regression_bound_value,
    gen_c4_regression,
    gen_fig3,
    gen_label_merge,
    gen_square,
    gen_swiss_roll,
    gen_xor,
    invariant_regression_bound_value,
    load_domain,
    rademacher_xor,
    save_domain,
    verify,
)

__all__ = [
    "Domain",
    "audit",
    "bound_report",
    "classification_bound",
    "classification_bound_finite_special",
    "cli_run",
    "domain_from_json",
    "equivariant_orthogonal_bound_value",
    "equivariant_regression_bound_value",
    "gen_c4_regression",
    "gen_fig3",
    "gen_label_merge",
    "gen_square",
    "gen_swiss_roll",
    "gen_xor",
    "invariant_regression_bound_value",
    "load_domain",
    "rademacher_xor",
    "save_domain",
    "verify",
]
