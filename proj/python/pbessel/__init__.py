"""p-Bessel functions, Erdelyi-Kober identities and p-circle lattice sums."""

from ._pbessel import (
    BudgetExceeded,
    DomainError,
    PExponent,
    UnsupportedRepresentation,
    angles_on_circle,
    area_term,
    bessel_j,
    count_lattice_points,
    hardy_partial_sum,
    hardy_partial_sum_p2,
    p_cosine,
    p_sine,
    pbessel,
    pbessel_complex,
    r_function,
    verify_ek_derivative,
    verify_ek_integral,
    verify_fractional_ode,
)

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "PExponent",
    "UnsupportedRepresentation",
    "angles_on_circle",
    "area_term",
    "bessel_j",
    "count_lattice_points",
    "hardy_partial_sum",
    "hardy_partial_sum_p2",
    "p_cosine",
    "p_sine",
    "pbessel",
    "pbessel_complex",
    "r_function",
    "verify_ek_derivative",
    "verify_ek_integral",
    "verify_fractional_ode",
]
