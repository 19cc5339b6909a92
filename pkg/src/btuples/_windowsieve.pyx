# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled window kernel for the indicator sieve.

Same contract as ``btuples._windowsieve_py.sieve_window``.  Three devices
keep the hot loop fast:

* strikes walk prime powers directly, so divisibility is structural and each
  strike divides exactly once: a right shift for p = 2, and a wrapping
  multiply by the inverse of p modulo 2**64 (Newton iteration) for odd p;
* the window is processed in cache-sized tiles so the residual/exponent
  arrays stay resident while several hundred primes sweep over them;
* primes of residue degree 1 impose no exponent condition, so they skip the
  exponent bookkeeping entirely and only reduce the residuals.
"""

import numpy as np

cdef Py_ssize_t TILE = 131072  # keeps resid/ecnt tiles inside L2 while primes sweep


cdef inline unsigned long long _inv64(unsigned long long p) noexcept:
    # Newton doubling: (3p)^2 inverts p mod 2**5, each step doubles the bits.
    cdef unsigned long long x = (3 * p) ^ 2
    x *= 2 - p * x
    x *= 2 - p * x
    x *= 2 - p * x
    x *= 2 - p * x
    return x


cdef inline Py_ssize_t _first_index(long long lo, Py_ssize_t base, long long q) noexcept:
    # index (relative to the window) of the first multiple of q at or after lo + base
    cdef long long rem = (lo + base) % q
    if rem != 0:
        rem = q - rem
    return base + <Py_ssize_t> rem


def sieve_window(long long lo, long long hi, primes, fvals, long long modulus, f1_table):
    if lo < 1 or hi < lo:
        raise ValueError(f"window must satisfy 1 <= lo <= hi, got [{lo}, {hi}]")
    cdef long long[::1] ps = np.ascontiguousarray(primes, dtype=np.int64)
    cdef long long[::1] fs = np.ascontiguousarray(fvals, dtype=np.int64)
    cdef unsigned char[::1] f1 = np.ascontiguousarray(f1_table, dtype=np.uint8)
    cdef Py_ssize_t width = <Py_ssize_t> (hi - lo + 1)
    resid_arr = np.arange(lo, hi + 1, dtype=np.uint64)
    bits_arr = np.ones(width, dtype=np.uint8)
    ecnt_arr = np.zeros(width, dtype=np.uint8)
    cdef unsigned long long[::1] resid = resid_arr
    cdef unsigned char[::1] bits = bits_arr
    cdef unsigned char[::1] ecnt = ecnt_arr
    cdef Py_ssize_t i, idx, step, tile_lo, tile_hi
    cdef long long p, f, q
    cdef unsigned long long inv, um, v
    cdef Py_ssize_t nprimes = ps.shape[0]

    for tile_lo in range(0, width, TILE):
        tile_hi = tile_lo + TILE
        if tile_hi > width:
            tile_hi = width
        for idx in range(nprimes):
            p = ps[idx]
            if p > hi:
                break
            f = fs[idx]
            inv = _inv64(<unsigned long long> p) if p != 2 else 0
            q = p
            while True:
                i = _first_index(lo, tile_lo, q)
                step = <Py_ssize_t> q
                if p == 2:
                    if f > 1:
                        while i < tile_hi:
                            resid[i] >>= 1
                            ecnt[i] += 1
                            i += step
                    else:
                        while i < tile_hi:
                            resid[i] >>= 1
                            i += step
                elif f > 1:
                    while i < tile_hi:
                        resid[i] = resid[i] * inv
                        ecnt[i] += 1
                        i += step
                else:
                    while i < tile_hi:
                        resid[i] = resid[i] * inv
                        i += step
                if q > hi // p:
                    break
                q *= p
            if f > 1:
                i = _first_index(lo, tile_lo, p)
                step = <Py_ssize_t> p
                while i < tile_hi:
                    if ecnt[i] % (<unsigned char> f) != 0:
                        bits[i] = 0
                    ecnt[i] = 0
                    i += step

    um = <unsigned long long> modulus
    for i in range(width):
        v = resid[i]
        if v > 1 and f1[<Py_ssize_t> (v % um)] == 0:
            bits[i] = 0
    return bits_arr
