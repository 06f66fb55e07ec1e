"""Euler-Kronecker constants, zeros of Dedekind zeta functions and
Brauer-Siegel statistics of abelian number fields."""

from ._zetakit import (  # noqa: F401
    DomainError,
    Field,
    IncompleteZerosError,
    LaurentData,
    NearZeroError,
    PoleError,
    PrecisionError,
    ResourceError,
    UnresolvedError,
    Z,
    ZetakitError,
    check_bounds,
    class_number,
    class_number_by_forms,
    count_zeros,
    family_csv,
    gamma,
    gamma_p,
    gamma_z_limit,
    mellin_check,
    monotone_check,
    count_window_integrals,
    reciprocal_zero_sum,
    residue,
    rvm_report,
    zeros,
)

__version__ = "0.1.0"
