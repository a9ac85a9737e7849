"""rootpade: exact Pade-type approximation systems for binomial functions and
effective finiteness certificates for rational approximations to n-th roots."""

from .bounds import (
    BoundConstants,
    DerivedConstant,
    bound_constants,
    coefficient_K_formula,
    derive_c1,
    derive_c2,
    derive_c3,
    derive_c45,
    maier_base,
    maier_growth_table,
    maier_lcm,
    reassembly_report,
    uniform_bound_check,
)
from .certify import (
    ApproxPair,
    Certificate,
    HuntReport,
    Target,
    band_check,
    cf_hunt,
    convergents,
    gap_certificate,
    select_rho,
    theta_pair,
)
from .exact import (
    BiPoly,
    Poly,
    TruncSeries,
    as_fraction,
    binomial_series,
    falling_factorial,
    falling_factorial_derivative,
    log_series,
    rising_factorial,
)
from .intervals import Interval, integer_nth_root, nth_root_interval, pi_interval
from .pade import (
    DeterminantSystem,
    ExponentSystem,
    PadeSystem,
    construct_linsolve,
    construct_residue,
    delta_report,
    determinant_delta,
    differential_shift_check,
    increment_rows,
    log_series_form,
    pairwise_gamma_delta,
    remainder_series,
)
from .specialization import (
    NthRootSystem,
    SplitForms,
    build_system,
    deflated_poly,
    pair_poly,
    pair_value,
    remainder_poly,
    select_row,
    slope_poly,
    specialized_determinant,
    split_forms,
)

__version__ = "0.1.0"
