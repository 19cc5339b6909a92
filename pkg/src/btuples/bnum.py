"""The B-number indicator: is n the norm of an integral ideal of the field?

A positive integer qualifies exactly when, for every prime p with p**a
exactly dividing n, the residue degree f of p divides a.  This covers
ramified primes too: every prime ideal above p has norm p**f, so the
attainable exponents at p are precisely the multiples of f.  Nonpositive n
are never B-numbers by convention, which lets progressions with negative
early terms be handled uniformly.

Pointwise queries factor n; range queries run a segmented sieve that divides
out all primes up to sqrt(hi) across the window and classifies the leftover
cofactors through a residue table, never touching per-element factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import kernels
from .arith import factor_int, primes_upto
from .field import FieldSpec, residue_degree, splitting_table

#: Hard cap on a single sieve window; larger requests raise WindowTooLargeError.
MAX_WINDOW = 1 << 25


class WindowTooLargeError(MemoryError):
    """A single indicator window would exceed the allocation cap."""


@dataclass(frozen=True)
class Factorization:
    """Multiset of (prime, exponent) pairs, primes strictly increasing."""

    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = 1
        for p, a in self.factors:
            n *= p**a
        return n


def factorize(n: int, seed: int = 0) -> Factorization:
    """Complete prime factorization of n >= 1; deterministic for fixed seed."""
    return Factorization(tuple(factor_int(n, seed)))


def is_b_number(field: FieldSpec, n: int) -> bool:
    """Pointwise indicator; False for n <= 0, True for n = 1."""
    if n <= 0:
        return False
    if n == 1:
        return True
    return all(a % residue_degree(field, p).f == 0 for p, a in factor_int(n))


def two_squares_oracle(n: int) -> bool:
    """Is n >= 1 a sum of two integer squares, by direct search over a <= sqrt(n).

    Deliberately independent of all splitting logic; serves as the test
    oracle for the Gaussian field.
    """
    if n < 1:
        raise ValueError(f"oracle needs n >= 1, got {n}")
    a = 0
    while 2 * a * a <= n:
        rest = n - a * a
        r = isqrt(rest)
        if r * r == rest:
            return True
        a += 1
    return False


@dataclass(frozen=True)
class BIndicatorRange:
    """Indicator bits over [lo, hi]: bits[i] = b(lo + i)."""

    lo: int
    hi: int
    bits: np.ndarray

    def bit(self, n: int) -> bool:
        if not self.lo <= n <= self.hi:
            raise IndexError(f"{n} outside [{self.lo}, {self.hi}]")
        return bool(self.bits[n - self.lo])

    def packed(self) -> bytes:
        """Bitset serialization (MSB-first within each byte)."""
        return np.packbits(self.bits).tobytes()


_SPLIT_CACHE: dict[FieldSpec, tuple[int, np.ndarray, np.ndarray]] = {}


def _primes_with_degrees(field: FieldSpec, limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Primes <= limit with their residue degrees, cached per field and grown on demand."""
    cached = _SPLIT_CACHE.get(field)
    if cached is None or cached[0] < limit:
        span = max(2 * limit, 1 << 12)  # grow geometrically; chunked callers creep upward
        primes = primes_upto(span)
        modulus, table = splitting_table(field)
        degs = table[primes % modulus] if primes.size else primes.copy()
        for q in sorted(field.discriminant_support):
            if q <= span:
                degs[np.searchsorted(primes, q)] = residue_degree(field, q).f
        _SPLIT_CACHE[field] = (span, primes, degs)
        cached = _SPLIT_CACHE[field]
    _, primes, degs = cached
    cut = int(np.searchsorted(primes, limit, side="right"))
    return primes[:cut], degs[:cut]


def _window_inputs(field: FieldSpec, hi: int) -> tuple[np.ndarray, np.ndarray, int, np.ndarray]:
    primes, degs = _primes_with_degrees(field, isqrt(hi))
    # ramified primes above sqrt(hi) must still be divided out so that the
    # leftover-cofactor table only ever sees unramified primes
    extra = [q for q in sorted(field.discriminant_support) if isqrt(hi) < q <= hi]
    if extra:
        primes = np.concatenate([primes, np.asarray(extra, dtype=np.int64)])
        degs = np.concatenate(
            [degs, np.asarray([residue_degree(field, q).f for q in extra], dtype=np.int64)]
        )
    modulus, table = splitting_table(field)
    f1_table = (table == 1).astype(np.uint8)
    return primes, degs, modulus, f1_table


def b_indicator_range(field: FieldSpec, lo: int, hi: int) -> BIndicatorRange:
    """Indicator bits for the whole window [lo, hi] via the segmented sieve."""
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi - lo + 1 > MAX_WINDOW:
        raise WindowTooLargeError(
            f"window [{lo}, {hi}] has {hi - lo + 1} elements, cap is {MAX_WINDOW}"
        )
    primes, degs, modulus, f1_table = _window_inputs(field, hi)
    bits = kernels.sieve_window(lo, hi, primes, degs, modulus, f1_table)
    return BIndicatorRange(lo, hi, bits)
