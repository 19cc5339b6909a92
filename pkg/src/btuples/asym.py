"""Numerical checks of the analytic scaffolding behind the count bounds.

Partial Euler products over the inert-type primes, the restricted
multiplicative partial sums whose growth exponent M - M/N drives the main
estimate, the density ratio of B-numbers themselves, and a least-squares
fit recovering an effective exponent from counted data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import fsum, log

import numpy as np

from .bnum import MAX_WINDOW, b_indicator_range
from .field import FieldSpec, residue_degree, inert_type_primes
from .arith import primes_upto


@dataclass(frozen=True)
class EulerProductConfig:
    """Parameters for the generating-function partial product."""

    field: FieldSpec
    M: int
    prime_cutoff: int
    s: float

    def __post_init__(self):
        if self.s <= 1:
            raise ValueError(f"need s > 1 (convergence region), got {self.s}")
        if self.prime_cutoff < 2:
            raise ValueError(f"need prime_cutoff >= 2, got {self.prime_cutoff}")
        if self.M < 1:
            raise ValueError(f"need M >= 1, got {self.M}")


def euler_f_partial(cfg: EulerProductConfig) -> float:
    """prod over inert-type primes p <= cutoff of (1 + M * p**-s)."""
    result = 1.0
    for p in inert_type_primes(cfg.field, cfg.prime_cutoff).tolist():
        result *= 1.0 + cfg.M * float(p) ** -cfg.s
    return result


def zeta_partial(s: float, cutoff: int) -> float:
    """Riemann zeta partial Euler product over p <= cutoff."""
    result = 1.0
    for p in primes_upto(cutoff).tolist():
        result *= 1.0 / (1.0 - float(p) ** -s)
    return result


def zeta_k_partial(field: FieldSpec, s: float, cutoff: int) -> float:
    """Dedekind zeta partial product: g primes of norm p**f per rational p <= cutoff."""
    if s <= 1:
        raise ValueError(f"need s > 1, got {s}")
    result = 1.0
    for p in primes_upto(cutoff).tolist():
        split = residue_degree(field, p)
        result *= (1.0 - float(p) ** (-split.f * s)) ** -split.g
    return result


def tauberian_partial(field: FieldSpec, M: int, t, exact: bool = False):
    """Sum of M**omega(k) / k over squarefree k < t built from inert-type primes.

    With exact=True the sum is returned as a Fraction (feasible only while
    the term count stays small: the common denominator is the lcm of all
    contributing k).  The default sums each exactly-represented term with
    compensated float accumulation in a fixed enumeration order, so results
    are deterministic.
    """
    if t <= 1:
        raise ValueError(f"need t > 1, got {t}")
    kmax = int(t) - 1 if t == int(t) else int(t)  # largest k with k < t
    primes = [int(p) for p in inert_type_primes(field, kmax)]
    terms: list = []

    def walk(start: int, k: int, weight: int) -> None:
        terms.append(Fraction(weight, k) if exact else weight / k)
        for i in range(start, len(primes)):
            p = primes[i]
            if k * p > kmax:
                break
            walk(i + 1, k * p, weight * M)

    walk(0, 1, 1)
    if exact:
        return sum(terms, Fraction(0))
    return fsum(terms)


def landau_ratio(field: FieldSpec, x: int) -> float:
    """Density ratio (count of B-numbers <= x) * (log x)**(1 - 1/N) / x."""
    if x < 100:
        raise ValueError(f"need x >= 100, got {x}")
    count = 0
    step = MAX_WINDOW // 2
    for lo in range(1, x + 1, step):
        hi = min(x, lo + step - 1)
        count += int(b_indicator_range(field, lo, hi).bits.sum())
    exponent = 1.0 - 1.0 / field.degree
    return count * log(x) ** exponent / x


def fit_exponent(grid) -> float:
    """Least-squares slope of log(x / S(x)) against log(log(x)).

    Needs at least three points with positive counts; recovers the exponent
    exactly on synthetic data S(x) = x / (log x)**e.
    """
    pts = [(int(x), int(s)) for x, s in grid]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 grid points, got {len(pts)}")
    if any(s <= 0 for _, s in pts):
        raise ValueError("all counts must be positive for exponent fitting")
    if any(x <= 1 for x, _ in pts):
        raise ValueError("grid values must exceed 1")
    xs = np.array([log(log(x)) for x, _ in pts])
    ys = np.array([log(x / s) for x, s in pts])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
