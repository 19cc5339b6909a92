"""B-number indicators over normal fields, tuple counting, exact sieve bounds.

The B-numbers of a normal field are the positive integers attained as norms
of integral ideals; for the Gaussian field these are exactly the sums of two
squares.  This package computes the indicator pointwise and over windows
(segmented sieve with a compiled core and a pure-Python fallback), counts
how often several arithmetic progressions hit B-numbers simultaneously, and
evaluates an exact-rational upper-bound sieve for those counts, including an
exhaustive verifier for the structural facts the sieve rests on.
"""

from .arith import is_prime, kronecker, primes_upto
from .bnum import (
    BIndicatorRange,
    Factorization,
    WindowTooLargeError,
    b_indicator_range,
    factorize,
    is_b_number,
    two_squares_oracle,
)
from .field import FieldSpec, PrimeSplit, cyclotomic_field, parse_field, pi_class, quadratic_field, residue_degree
from .kernels import BACKEND
from .sieve import (
    PropositionReport,
    ResidueSet,
    SieveConsistencyError,
    SieveSystem,
    gamma_factor,
    in_pi_star,
    omega_bar,
    selberg_upper_bound,
    sieve_system,
    theta,
    v_y_exact,
    v_y_restricted,
    verify_proposition,
)
from .tuples import (
    CountReport,
    FamilyError,
    TupleFamily,
    count_S,
    normalizing_exponent,
    parse_family,
    scan,
    validate_family,
)
from .asym import (
    EulerProductConfig,
    euler_f_partial,
    fit_exponent,
    landau_ratio,
    tauberian_partial,
    zeta_k_partial,
    zeta_partial,
)

__version__ = "0.1.0"
