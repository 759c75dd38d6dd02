"""Exact linear algebra and the flag-algebra calculus."""

from flagforge.algebra.exactlin import (
    LdlFactor,
    PSDBlock,
    assemble,
    check_psd,
    format_rational,
    in_kernel,
    kernel_basis,
    ldl_factor,
    null_space,
    parse_rational,
    rank,
)
from flagforge.algebra.flagcalc import (
    BoundReport,
    ForcedKernelReport,
    alpha_coefficients,
    check_forced_kernel,
    derive_bound,
    flag_count,
    forced_vector,
    forced_vectors,
    pair_coefficients,
    remove_type,
    type_embeddings,
)

__all__ = [
    "BoundReport",
    "ForcedKernelReport",
    "LdlFactor",
    "PSDBlock",
    "alpha_coefficients",
    "assemble",
    "check_forced_kernel",
    "check_psd",
    "derive_bound",
    "flag_count",
    "forced_vector",
    "forced_vectors",
    "format_rational",
    "in_kernel",
    "kernel_basis",
    "ldl_factor",
    "null_space",
    "pair_coefficients",
    "parse_rational",
    "rank",
    "remove_type",
    "type_embeddings",
]
