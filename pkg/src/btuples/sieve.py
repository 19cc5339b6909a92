"""Exact upper-bound sieve for simultaneous B-number hits.

For a field and a tuple family, the sieving primes are the unramified primes
of residue degree r > 1 that divide neither any slope a_m nor any cross
product a_m*b_k - a_k*b_m, and differ from M - 1 (the edge where the
surviving density could reach zero).  At each admissible prime power p**a
(a >= 2, r not dividing a - 1) the blocked residue classes are

    a_m^(-1) * (j * p**(a-1) - b_m)  (mod p**a),   j = 1..p-1, m = 1..M,

whose members k force some progression value to carry p-exponent exactly
a - 1, hence a non-norm.  The surviving density theta, the weight sum V_Y,
the resulting (x + Y**2) / V_Y bound and the compensation factor gamma for
the excluded primes are all computed in exact rational arithmetic; no floats
enter any result in this module.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from math import isqrt

import numpy as np

from .arith import factor_int
from .field import FieldSpec, pi_class, inert_type_primes
from .tuples import TupleFamily, _block_span, qualifying_block, validate_family


class SieveConsistencyError(RuntimeError):
    """A surviving density came out nonpositive; this means a bug, not data."""


class SieveSystem:
    """Per (field, family) sieve state: excluded primes plus exact-value caches.

    Construction factors every slope and every cross product individually
    (never their full product, which can be astronomically large) and keeps
    both the prime set and the exact product for membership tests.  After
    construction the system is immutable apart from internal caches, and all
    queries are pure.
    """

    def __init__(self, field: FieldSpec, family: TupleFamily):
        self.field = field
        self.family = validate_family(family.pairs)
        self.M = self.family.size
        pairs = self.family.pairs
        product = 1
        excluded: set[int] = set()
        for a, _ in pairs:
            product *= a
            excluded.update(p for p, _ in factor_int(a))
        for m in range(len(pairs)):
            for k in range(len(pairs)):
                if m == k:
                    continue
                cross = pairs[m][0] * pairs[k][1] - pairs[k][0] * pairs[m][1]
                product *= cross
                excluded.update(p for p, _ in factor_int(abs(cross)))
        self.exclusion_product = product
        self.excluded_primes = frozenset(excluded)
        self._theta_cache: dict[tuple[int, int], Fraction] = {}
        self._omega_size_cache: dict[tuple[int, int], int] = {}


def sieve_system(field: FieldSpec, family: TupleFamily) -> SieveSystem:
    return SieveSystem(field, family)


@dataclass(frozen=True)
class ResidueSet:
    """Blocked residue classes modulo p**alpha (possibly empty)."""

    p: int
    alpha: int
    classes: tuple[int, ...]

    def __post_init__(self):
        q = self.p**self.alpha
        if any(not 0 <= c < q for c in self.classes):
            raise ValueError(f"residues must lie in [0, {q})")
        if any(a >= b for a, b in zip(self.classes, self.classes[1:])):
            raise ValueError("residues must be strictly increasing")


def in_pi_star(system: SieveSystem, p: int) -> bool:
    """Is p a sieving prime: inert-type, coprime to the exclusion product, != M-1."""
    r = pi_class(system.field, p)
    return r is not None and r > 1 and p not in system.excluded_primes and p != system.M - 1


def pi_star_primes(system: SieveSystem, limit: int) -> list[int]:
    """Ascending sieving primes <= limit."""
    forbidden = system.excluded_primes | {system.M - 1}
    return [int(p) for p in inert_type_primes(system.field, limit) if int(p) not in forbidden]


def omega_bar(system: SieveSystem, p: int, alpha: int) -> ResidueSet:
    """Blocked classes modulo p**alpha; empty unless p sieves and r does not divide alpha-1."""
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if not in_pi_star(system, p):
        return ResidueSet(p, alpha, ())
    r = pi_class(system.field, p)
    if (alpha - 1) % r == 0:
        return ResidueSet(p, alpha, ())
    q = p**alpha
    shift = p ** (alpha - 1)
    classes: set[int] = set()
    for a, b in system.family.pairs:
        inv = pow(a, -1, q)
        for j in range(1, p):
            classes.add(inv * (j * shift - b) % q)
    return ResidueSet(p, alpha, tuple(sorted(classes)))


def omega_members(system: SieveSystem, p: int, alpha: int, limit: int) -> np.ndarray:
    """Positive integers <= limit lying in some blocked class modulo p**alpha."""
    q = p**alpha
    parts = []
    for c in omega_bar(system, p, alpha).classes:
        start = c if c >= 1 else q
        if start <= limit:
            parts.append(np.arange(start, limit + 1, q, dtype=np.int64))
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.sort(np.concatenate(parts))


def _omega_size(system: SieveSystem, p: int, alpha: int) -> int:
    key = (p, alpha)
    size = system._omega_size_cache.get(key)
    if size is None:
        size = len(omega_bar(system, p, alpha).classes)
        system._omega_size_cache[key] = size
    return size


def theta(system: SieveSystem, p: int, alpha: int) -> Fraction:
    """Surviving density after removing blocked classes at powers up to alpha.

    theta(p, 0) = 1 and theta(p, a) = 1 - sum_{j<=a} #classes(p, j) / p**j,
    always an exact rational and provably positive for sieving primes; a
    nonpositive value raises SieveConsistencyError.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    key = (p, alpha)
    cached = system._theta_cache.get(key)
    if cached is not None:
        return cached
    if alpha == 0:
        value = Fraction(1)
    else:
        value = theta(system, p, alpha - 1) - Fraction(_omega_size(system, p, alpha), p**alpha)
    if value <= 0:
        raise SieveConsistencyError(
            f"theta({p}**{alpha}) = {value} <= 0 for family {system.family}"
        )
    system._theta_cache[key] = value
    return value


def _int_below(y) -> int:
    """Largest integer strictly below y (y given exactly as int/float/Fraction)."""
    f = Fraction(y)
    fl = f.numerator // f.denominator
    return fl - 1 if fl == f else fl


def _v_sum(system: SieveSystem, dmax: int) -> Fraction:
    """Sum over d <= dmax of the product of per-prime-power weight steps.

    Only d built entirely from admissible prime powers contribute a nonzero
    product, so the enumeration walks those directly instead of iterating
    over every d; d = 1 contributes 1.
    """
    primes = pi_star_primes(system, isqrt(dmax)) if dmax >= 4 else []
    total = Fraction(0)

    def walk(start: int, d: int, weight: Fraction) -> None:
        nonlocal total
        total += weight
        for i in range(start, len(primes)):
            p = primes[i]
            if d * p * p > dmax:
                break
            r = pi_class(system.field, p)
            q = p * p
            alpha = 2
            while d * q <= dmax:
                if (alpha - 1) % r != 0:
                    step = 1 / theta(system, p, alpha) - 1 / theta(system, p, alpha - 1)
                    walk(i + 1, d * q, weight * step)
                q *= p
                alpha += 1

    walk(0, 1, Fraction(1))
    return total


def v_y_exact(system: SieveSystem, y) -> Fraction:
    """Exact weight sum over 0 < d < Y."""
    dmax = _int_below(y)
    if dmax < 1:
        raise ValueError(f"need Y > 1, got {y}")
    return _v_sum(system, dmax)


def v_y_restricted(system: SieveSystem, y) -> Fraction:
    """Lower-bound variant: squarefree d1 < sqrt(Y) over sieving primes, M**omega(d1)/d1."""
    dmax = _int_below(y)
    if dmax < 1:
        raise ValueError(f"need Y > 1, got {y}")
    d1max = isqrt(dmax)
    primes = pi_star_primes(system, d1max)
    total = Fraction(0)

    def walk(start: int, d1: int, weight: Fraction) -> None:
        nonlocal total
        total += weight
        for i in range(start, len(primes)):
            p = primes[i]
            if d1 * p > d1max:
                break
            walk(i + 1, d1 * p, weight * system.M / p)

    walk(0, 1, Fraction(1))
    return total


def selberg_upper_bound(system: SieveSystem, x: int, y="sqrt") -> Fraction:
    """Exact upper bound (x + Y**2) / V_Y for the simultaneous-hit count up to x.

    y = "sqrt" applies Y = sqrt(x) exactly: the d-range becomes d*d < x and
    Y**2 is taken as x itself, so no floating point enters.
    """
    if x < 1:
        raise ValueError(f"need x >= 1, got {x}")
    if isinstance(y, str):
        if y != "sqrt":
            raise ValueError(f"y rule must be 'sqrt' or a number, got {y!r}")
        if x < 2:
            raise ValueError("Y = sqrt(x) needs x >= 2 to satisfy Y > 1")
        dmax = isqrt(x - 1)
        y_squared = Fraction(x)
    else:
        yf = Fraction(y)
        if yf <= 1:
            raise ValueError(f"need Y > 1, got {y}")
        dmax = _int_below(yf)
        y_squared = yf * yf
    return (x + y_squared) / _v_sum(system, dmax)


def gamma_factor(system: SieveSystem) -> tuple[tuple[int, ...], Fraction]:
    """Excluded inert-type primes and the compensation product over them.

    Returns (primes, gamma) with gamma = prod (1 + M/p).  Only primes of
    residue degree > 1 dividing the exclusion product enter; excluded primes
    of degree 1 are irrelevant to the sieve and stay out, as does M - 1
    unless it happens to divide the product.
    """
    primes = tuple(
        p
        for p in sorted(system.excluded_primes)
        if (r := pi_class(system.field, p)) is not None and r > 1
    )
    gamma = Fraction(1)
    for p in primes:
        gamma *= Fraction(p + system.M, p)
    return primes, gamma


@dataclass
class ClauseResult:
    passed: bool
    checked: int
    witness: dict | None = None


@dataclass
class PropositionReport:
    """Outcome of the exhaustive clause checks for one sieving prime."""

    field: str
    family: str
    p: int
    alpha_max: int
    clauses: dict[str, ClauseResult] = dc_field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.clauses.values())

    def to_json(self) -> str:
        doc = {
            "field": self.field,
            "family": self.family,
            "p": self.p,
            "alpha_max": self.alpha_max,
            "all_passed": self.all_passed,
            "clauses": {name: asdict(c) for name, c in self.clauses.items()},
        }
        return json.dumps(doc, indent=2) + "\n"


def _first_divisible_pair(pairs, p: int, k: int) -> list[int]:
    return [m for m, (a, b) in enumerate(pairs) if (a * k + b) % p == 0][:2]


def verify_proposition(
    system: SieveSystem, p: int, alpha_max: int, omega_fn=None
) -> PropositionReport:
    """Exhaustively check the structural clauses over one full period.

    For every power p**a (a <= alpha_max) with nonempty blocked classes, and
    for every k in [1, p**alpha_max]:

    (i)   each nonempty class set has exactly M*(p-1) residues;
    (ii)  every blocked k has some progression value exactly divisible by
          p**(a-1);
    (iii) no k makes two different progression values divisible by p;
    (iv)  the product of progression values at blocked k is exactly divisible
          by p**(a-1), and blocked sets for different powers are disjoint;
    (v)   no blocked k has all progression values land on B-numbers (checked
          through the segmented indicator, independent of the class algebra).

    The first failing k per clause is reported as a witness.  ``omega_fn``
    may replace the class constructor (used by fault-injection tests).
    """
    if omega_fn is None:
        omega_fn = omega_bar
    if not in_pi_star(system, p):
        raise ValueError(f"p={p} is not a sieving prime for this system")
    r = pi_class(system.field, p)
    pairs = system.family.pairs
    expected = system.M * (p - 1)
    report = PropositionReport(system.field.label, str(system.family), p, alpha_max)

    sets: dict[int, np.ndarray] = {}
    for a in range(1, alpha_max + 1):
        classes = omega_fn(system, p, a).classes
        if classes:
            sets[a] = np.asarray(classes, dtype=np.int64)

    witness_i = None
    for a, arr in sorted(sets.items()):
        if arr.size != expected:
            witness_i = {"alpha": a, "size": int(arr.size), "expected": expected}
            break
    report.clauses["i"] = ClauseResult(witness_i is None, len(sets), witness_i)

    # membership lookup per power: direct table when small, sorted search otherwise
    lookups: dict[int, tuple[str, np.ndarray]] = {}
    for a, arr in sets.items():
        q = p**a
        if q <= (1 << 24):
            table = np.zeros(q, dtype=bool)
            table[arr] = True
            lookups[a] = ("table", table)
        else:
            lookups[a] = ("sorted", arr)

    # residues k mod p at which each progression is divisible by p
    div_count = np.zeros(p, dtype=np.int64)
    for a_m, b_m in pairs:
        div_count[(-b_m) * pow(a_m, -1, p) % p] += 1

    period = p**alpha_max
    chunk = _block_span(system.family)
    res = {name: ClauseResult(True, 0) for name in ("ii", "iii", "iv", "v")}
    alphas = sorted(sets)

    for k0 in range(1, period + 1, chunk):
        k1 = min(period, k0 + chunk - 1)
        karr = np.arange(k0, k1 + 1, dtype=np.int64)

        res["iii"].checked += karr.size
        if res["iii"].passed:
            hits = div_count[karr % p]
            bad = np.flatnonzero(hits >= 2)
            if bad.size:
                k = int(karr[bad[0]])
                res["iii"] = ClauseResult(
                    False, res["iii"].checked,
                    {"k": k, "progressions": _first_divisible_pair(pairs, p, k)},
                )

        members = {}
        for a in alphas:
            kind, obj = lookups[a]
            kmod = karr % (p**a)
            members[a] = obj[kmod] if kind == "table" else np.isin(kmod, obj)

        for i, a in enumerate(alphas):
            for a2 in alphas[i + 1 :]:
                if not res["iv"].passed:
                    break
                overlap = np.flatnonzero(members[a] & members[a2])
                if overlap.size:
                    res["iv"] = ClauseResult(
                        False, res["iv"].checked,
                        {"k": int(karr[overlap[0]]), "alphas": [a, a2]},
                    )

        mem_any = np.zeros(karr.size, dtype=bool)
        for a in alphas:
            mem_any |= members[a]
        idx = np.flatnonzero(mem_any)

        if idx.size:
            ks = karr[idx]
            vals = np.zeros((len(pairs), idx.size), dtype=np.int64)
            for m, (a_m, b_m) in enumerate(pairs):
                v = a_m * ks + b_m
                val = np.zeros(idx.size, dtype=np.int64)
                val[v == 0] = -1                      # sentinel: p**j never exact on 0
                cur = v.copy()
                live = np.flatnonzero((v != 0) & (v % p == 0))
                while live.size:
                    cur[live] //= p
                    val[live] += 1
                    live = live[cur[live] % p == 0]
                vals[m] = val
            val_total = vals.sum(axis=0)
            has_zero = (vals == -1).any(axis=0)

            for a in alphas:
                sel = members[a][idx]
                n_sel = int(sel.sum())
                res["ii"].checked += n_sel
                res["iv"].checked += n_sel
                target = a - 1
                if res["ii"].passed:
                    ok2 = (vals == target).any(axis=0)
                    bad = np.flatnonzero(sel & ~ok2)
                    if bad.size:
                        k = int(ks[bad[0]])
                        res["ii"] = ClauseResult(
                            False, res["ii"].checked, {"k": k, "alpha": a}
                        )
                if res["iv"].passed:
                    ok4 = ~has_zero & (val_total == target)
                    bad = np.flatnonzero(sel & ~ok4)
                    if bad.size:
                        k = int(ks[bad[0]])
                        res["iv"] = ClauseResult(
                            False, res["iv"].checked,
                            {"k": k, "alpha": a, "product_valuation": int(val_total[bad[0]])},
                        )

        all_hits = qualifying_block(system.field, system.family, k0, k1)
        for a in alphas:
            sel = members[a]
            res["v"].checked += int(sel.sum())
            if res["v"].passed:
                bad = np.flatnonzero(sel & all_hits)
                if bad.size:
                    res["v"] = ClauseResult(
                        False, res["v"].checked, {"k": int(karr[bad[0]]), "alpha": a}
                    )

    for name in ("ii", "iii", "iv", "v"):
        report.clauses[name] = res[name]
    return report
