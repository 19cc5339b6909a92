"""Integer arithmetic primitives: primality, factorization, characters, orders.

Everything here is deterministic.  Factorization runs trial division over a
fixed small-prime table and then Brent's cycle-finding method with a fixed
parameter schedule, so identical inputs always factor along identical paths.
"""

from __future__ import annotations

from math import gcd, isqrt

import numpy as np

_TRIAL_BOUND = 1 << 16

# Witness set making Miller-Rabin exact for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an ascending int64 array (empty for n < 2)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


_SMALL_PRIMES = primes_upto(_TRIAL_BOUND).tolist()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_cycle(n: int, c: int, x0: int = 2) -> int:
    """One Brent rho round on odd n with increment c; may return n on failure."""
    m = 128
    y, r, q = x0, 1, 1
    g = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g


def _split_composite(n: int, seed: int) -> int:
    """Nontrivial factor of an odd composite n with no factor <= _TRIAL_BOUND."""
    c = 1 + seed
    while True:
        g = _brent_cycle(n, c)
        if 1 < g < n:
            return g
        c += 1


def factor_int(n: int, seed: int = 0) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as ascending (prime, exponent) pairs.

    The seed offsets the Brent parameter schedule; any seed yields the same
    (unique) factorization, it only changes the search path.
    """
    if n < 1:
        raise ValueError(f"cannot factor n={n}; need n >= 1")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    if n > 1:
        stack = [n]
        while stack:
            v = stack.pop()
            if is_prime(v):
                out[v] = out.get(v, 0) + 1
                continue
            g = _split_composite(v, seed)
            stack.append(g)
            stack.append(v // g)
    return sorted(out.items())


def is_squarefree(n: int) -> bool:
    return all(a == 1 for _, a in factor_int(abs(n)))


def euler_phi(n: int) -> int:
    """Euler totient of n >= 1."""
    result = n
    for p, _ in factor_int(n):
        result = result // p * (p - 1)
    return result


def multiplicative_order(a: int, n: int) -> int:
    """Least k >= 1 with a**k = 1 (mod n); order modulo 1 is 1."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return 1
    a %= n
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    order = euler_phi(n)
    for p, _ in factor_int(order):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers a, n.

    Conventions: (a|0) is 1 for a = +-1 and 0 otherwise; (a|-1) is -1 for
    a < 0 and 1 otherwise; (a|2) is 0 for even a, +1 for a = +-1 (mod 8)
    and -1 for a = +-3 (mod 8).
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    t = 1
    if n < 0:
        n = -n
        if a < 0:
            t = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        z = 0
        while n % 2 == 0:
            n //= 2
            z += 1
        if z % 2 == 1 and a % 8 in (3, 5):
            t = -t
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0
