"""Pure-Python (numpy) window kernel, the fallback for the compiled core.

``sieve_window(lo, hi, primes, fvals, modulus, f1_table)`` returns a uint8
array ``bits`` of length ``hi - lo + 1`` where ``bits[i]`` is 1 exactly when
``n = lo + i`` has, for every prime q, an exponent divisible by the
attainable-exponent modulus of q (its residue degree in the field).

Caller obligations:

* ``1 <= lo <= hi``;
* ``primes``/``fvals`` list every prime <= isqrt(hi) plus every ramified
  prime <= hi, ascending, with their residue degrees;
* ``f1_table[q % modulus]`` is 1 exactly when an unramified prime q coprime
  to the modulus has residue degree 1.  After the listed primes are divided
  out, any leftover cofactor > 1 is an unramified prime exceeding isqrt(hi)
  with exponent 1, so the table decides its admissibility.

Strikes walk prime powers directly (multiples of p**j get their j-th
division at stride p**j), so exponents accumulate without trial divisions.
"""

from __future__ import annotations

import numpy as np


def sieve_window(lo, hi, primes, fvals, modulus, f1_table):
    if lo < 1 or hi < lo:
        raise ValueError(f"window must satisfy 1 <= lo <= hi, got [{lo}, {hi}]")
    width = hi - lo + 1
    resid = np.arange(lo, hi + 1, dtype=np.int64)
    bits = np.ones(width, dtype=np.uint8)
    ecnt = np.zeros(width, dtype=np.int8)
    for p, f in zip(primes.tolist(), fvals.tolist()):
        if p > hi:
            break
        track = f > 1  # degree-1 primes impose no exponent condition
        q = p
        while True:
            start = (-lo) % q
            resid[start::q] //= p
            if track:
                ecnt[start::q] += 1
            if q > hi // p:
                break
            q *= p
        if track:
            start = (-lo) % p
            exp_view = ecnt[start::p]
            bad = (exp_view % f) != 0
            if bad.any():
                bits_view = bits[start::p]
                bits_view[bad] = 0
            exp_view[:] = 0
    leftover = np.flatnonzero(resid > 1)
    if leftover.size:
        vals = resid[leftover]
        admissible = f1_table[vals % modulus].astype(bool)
        bits[leftover[~admissible]] = 0
    return bits
