"""Exact approximation of real points by normalized points on x1*...*xn = 1 (mod p).

Integers map to Python ints and rationals to fractions.Fraction; rational
arguments also accept ints and strings such as "1/3" or "0.25".
"""

from ._core import (
    Certificate,
    FpdenseError,
    FractionCandidate,
    PolyCertificate,
    approximate,
    approximate_polynomial,
    box_discrepancy,
    build_chain,
    chain_is_valid,
    crt,
    dirichlet_residue,
    enumerate_points,
    find_coprime_numerator,
    find_denominator_for_prime,
    gcd,
    is_prime,
    jacobsthal,
    lift_chain,
    mod_inverse,
    nearest_point_distance,
    next_prime_in_ap,
    verify_certificate,
    verify_poly_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
