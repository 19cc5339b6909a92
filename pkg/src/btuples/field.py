"""Number-field descriptions and rational-prime decomposition queries.

Two explicitly computable families of normal fields are supported:

* ``quadratic:d`` -- Q(sqrt(d)) for squarefree d not in {0, 1}.  Splitting is
  read off the Kronecker symbol of the field discriminant, which is d itself
  for d = 1 (mod 4) and 4d otherwise.
* ``cyclotomic:m`` -- the m-th cyclotomic field, m >= 3 and m != 2 (mod 4).
  Splitting is read off the multiplicative order of p modulo the prime-to-p
  part of m.

Both kinds answer the same queries through one interface, so further field
kinds only have to extend ``residue_degree``.  All values are immutable and
every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .arith import (
    euler_phi,
    factor_int,
    is_prime,
    is_squarefree,
    kronecker,
    multiplicative_order,
    primes_upto,
)


@dataclass(frozen=True)
class FieldSpec:
    """A computable normal field: kind + defining parameter + derived data."""

    kind: str                           # "quadratic" | "cyclotomic"
    param: int                          # d for quadratic, m for cyclotomic
    degree: int                         # N = [K:Q]
    discriminant_support: frozenset[int]
    label: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class PrimeSplit:
    """How a rational prime decomposes: g primes of residue degree f, ramification e."""

    p: int
    f: int
    e: int
    g: int
    ramified: bool


def quadratic_field(d: int) -> FieldSpec:
    if d in (0, 1):
        raise ValueError(f"quadratic field needs d outside {{0, 1}}, got {d}")
    if not is_squarefree(d):
        raise ValueError(f"quadratic field needs squarefree d, got {d}")
    disc = d if d % 4 == 1 else 4 * d
    support = frozenset(p for p, _ in factor_int(abs(disc)))
    return FieldSpec("quadratic", d, 2, support, f"quadratic:{d}")


def cyclotomic_field(m: int) -> FieldSpec:
    if m < 3:
        raise ValueError(f"cyclotomic field needs m >= 3, got {m}")
    if m % 4 == 2:
        raise ValueError(f"cyclotomic index m = 2 (mod 4) is rejected (same field as m/2), got {m}")
    support = frozenset(p for p, _ in factor_int(m))
    return FieldSpec("cyclotomic", m, euler_phi(m), support, f"cyclotomic:{m}")


def parse_field(spec: str) -> FieldSpec:
    """Parse "quadratic:<d>" or "cyclotomic:<m>" into a validated FieldSpec."""
    kind, sep, raw = spec.strip().partition(":")
    if not sep:
        raise ValueError(f"field spec {spec!r} must look like 'quadratic:<d>' or 'cyclotomic:<m>'")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"field spec {spec!r} has a non-integer parameter {raw!r}") from None
    if kind == "quadratic":
        return quadratic_field(value)
    if kind == "cyclotomic":
        return cyclotomic_field(value)
    raise ValueError(f"unknown field kind {kind!r} in spec {spec!r}")


def quadratic_discriminant(field: FieldSpec) -> int:
    if field.kind != "quadratic":
        raise ValueError(f"{field.label} is not quadratic")
    d = field.param
    return d if d % 4 == 1 else 4 * d


@lru_cache(maxsize=None)
def residue_degree(field: FieldSpec, p: int) -> PrimeSplit:
    """Decomposition data of the prime p in the field.

    For quadratic fields the Kronecker symbol of the discriminant decides
    between split (f=1, g=2), inert (f=2, g=1) and ramified (e=2).  For
    cyclotomic index m = p**v * m' with p not dividing m', the residue degree
    is the order of p modulo m', e = phi(p**v) and g = phi(m') / f.  In all
    cases e * f * g equals the field degree.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if field.kind == "quadratic":
        sym = kronecker(quadratic_discriminant(field), p)
        if sym == 1:
            return PrimeSplit(p, 1, 1, 2, False)
        if sym == -1:
            return PrimeSplit(p, 2, 1, 1, False)
        return PrimeSplit(p, 1, 2, 1, True)
    m = field.param
    v = 0
    m_prime = m
    while m_prime % p == 0:
        m_prime //= p
        v += 1
    f = 1 if m_prime == 1 else multiplicative_order(p, m_prime)
    e = euler_phi(p**v) if v else 1
    g = euler_phi(m_prime) // f
    return PrimeSplit(p, f, e, g, v > 0)


def pi_class(field: FieldSpec, p: int) -> int | None:
    """Decomposition-class index r = f for unramified p; None on the discriminant."""
    if p in field.discriminant_support:
        return None
    return residue_degree(field, p).f


_TABLE_CACHE: dict[FieldSpec, tuple[int, np.ndarray]] = {}

# Residue tables grow linearly with the classifying modulus; refuse absurd ones.
_MAX_TABLE_MODULUS = 1 << 27


def splitting_table(field: FieldSpec) -> tuple[int, np.ndarray]:
    """Residue-degree lookup table for unramified primes.

    Returns (T, table) where T is |disc| (quadratic) or m (cyclotomic) and
    table[q % T] is the residue degree of any unramified prime q.  Entries at
    classes sharing a factor with T are 0; the only primes in those classes
    divide T and must be looked up through ``residue_degree`` instead.
    """
    cached = _TABLE_CACHE.get(field)
    if cached is not None:
        return cached
    if field.kind == "quadratic":
        disc = quadratic_discriminant(field)
        modulus = abs(disc)
        if modulus > _MAX_TABLE_MODULUS:
            raise ValueError(f"discriminant {disc} too large for table-based sieving")
        table = np.zeros(modulus, dtype=np.int64)
        for c in range(modulus):
            if gcd(c, modulus) == 1:
                table[c] = 1 if kronecker(disc, c) == 1 else 2
    else:
        modulus = field.param
        table = np.zeros(modulus, dtype=np.int64)
        for c in range(modulus):
            if gcd(c, modulus) == 1:
                table[c] = multiplicative_order(c, modulus)
    _TABLE_CACHE[field] = (modulus, table)
    return modulus, table


def inert_type_primes(field: FieldSpec, limit: int) -> np.ndarray:
    """Unramified primes <= limit with residue degree > 1, ascending."""
    primes = primes_upto(limit)
    if primes.size == 0:
        return primes
    modulus, table = splitting_table(field)
    degs = table[primes % modulus]
    keep = degs > 1
    # classes sharing a factor with the modulus only contain ramified primes
    return primes[keep]
