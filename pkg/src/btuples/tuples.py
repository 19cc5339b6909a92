"""Tuple families of arithmetic progressions and the simultaneous-hit count.

A family is M >= 2 progressions (a_m * n + b_m) with positive a_m and no
progression a rational multiple of another (all cross products
a_m * b_k - a_k * b_m nonzero).  ``count_S`` counts the n <= x for which
every progression lands on a B-number; terms <= 0 never qualify.

Counting is range-wise: per block of n, one indicator window per distinct
slope a covers all progressions sharing that slope, and the per-progression
bit streams are intersected.  This keeps the dominant cost at one sieve pass
per slope instead of per-n factorization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import log

import numpy as np

from .bnum import MAX_WINDOW, b_indicator_range
from .field import FieldSpec


class FamilyError(ValueError):
    """A tuple family violates positivity or nondegeneracy."""


@dataclass(frozen=True)
class TupleFamily:
    """Validated list of (a, b) progression pairs."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return ":".join(f"{a},{b}" for a, b in self.pairs)


def validate_family(pairs) -> TupleFamily:
    """Check positivity of the a_m and pairwise nondegeneracy; raise FamilyError."""
    pairs = tuple((int(a), int(b)) for a, b in pairs)
    if len(pairs) < 2:
        raise FamilyError(f"family needs at least 2 progressions, got {len(pairs)}")
    for m, (a, _) in enumerate(pairs):
        if a < 1:
            raise FamilyError(f"progression {m} has nonpositive slope a={a}")
    for m in range(len(pairs)):
        for k in range(m + 1, len(pairs)):
            a_m, b_m = pairs[m]
            a_k, b_k = pairs[k]
            cross = a_m * b_k - a_k * b_m
            if cross == 0:
                raise FamilyError(
                    f"progressions {m} and {k} are proportional: "
                    f"cross product {a_m}*{b_k} - {a_k}*{b_m} = 0"
                )
    return TupleFamily(pairs)


def parse_family(text: str) -> TupleFamily:
    """Parse the CLI grammar "a1,b1:a2,b2:..." (negative b allowed)."""
    pairs = []
    for part in text.strip().split(":"):
        bits = part.split(",")
        if len(bits) != 2:
            raise FamilyError(f"family term {part!r} is not of the form 'a,b'")
        try:
            pairs.append((int(bits[0]), int(bits[1])))
        except ValueError:
            raise FamilyError(f"family term {part!r} has non-integer entries") from None
    return validate_family(pairs)


def qualifying_block(field: FieldSpec, family: TupleFamily, n_lo: int, n_hi: int) -> np.ndarray:
    """Boolean mask over n in [n_lo, n_hi]: all progressions land on B-numbers.

    One indicator window per distinct slope; progressions sharing a slope
    reuse it.  Values <= 0 fail by convention.
    """
    count = n_hi - n_lo + 1
    n = None  # built lazily; slope-1 progressions never need it
    ok = np.ones(count, dtype=bool)
    groups: dict[int, list[int]] = {}
    for a, b in family.pairs:
        groups.setdefault(a, []).append(b)
    for a in sorted(groups):
        offsets = groups[a]
        w_hi = a * n_hi + max(offsets)
        if w_hi < 1:
            ok[:] = False
            break
        w_lo = max(1, a * n_lo + min(offsets))
        window = b_indicator_range(field, w_lo, w_hi)
        for b in offsets:
            if a == 1:
                # contiguous: the values n + b are a plain slice of the window
                v0 = n_lo + b
                skip = max(0, w_lo - v0)
                ok[:skip] = False
                base = v0 + skip - w_lo
                ok[skip:] &= window.bits[base : base + count - skip].view(bool)
                continue
            if n is None:
                n = np.arange(n_lo, n_hi + 1, dtype=np.int64)
            v = a * n + b
            valid = v >= w_lo
            idx = np.where(valid, v - w_lo, 0)
            ok &= valid & window.bits[idx].view(bool)
    return ok


def _block_span(family: TupleFamily) -> int:
    max_a = max(a for a, _ in family.pairs)
    return max(1, min(1 << 21, (MAX_WINDOW - 64) // max_a))


def count_S_grid(field: FieldSpec, family: TupleFamily, xs: list[int]) -> list[int]:
    """Counts at several cut points in one pass over [1, max(xs)]."""
    if any(x < 1 for x in xs):
        raise ValueError(f"grid values must be >= 1, got {xs}")
    order = sorted(set(xs))
    top = order[-1]
    span = _block_span(family)
    counts = {}
    running = 0
    next_idx = 0
    for n_lo in range(1, top + 1, span):
        n_hi = min(top, n_lo + span - 1)
        mask = qualifying_block(field, family, n_lo, n_hi)
        while next_idx < len(order) and order[next_idx] <= n_hi:
            x = order[next_idx]
            counts[x] = running + int(mask[: x - n_lo + 1].sum())
            next_idx += 1
        running += int(mask.sum())
    return [counts[x] for x in xs]


def count_S(field: FieldSpec, family: TupleFamily, x: int) -> int:
    """Number of n in [1, x] with every a_m * n + b_m a B-number."""
    if x < 1:
        return 0
    return count_S_grid(field, family, [x])[0]


def normalizing_exponent(field: FieldSpec, family: TupleFamily) -> Fraction:
    """The exact normalization exponent M * (1 - 1/N) for ratio columns."""
    m = family.size
    n = field.degree
    return Fraction(m * (n - 1), n)


@dataclass(frozen=True)
class ReportRow:
    x: int
    count: int
    bound: Fraction
    ratio: float


@dataclass
class CountReport:
    """Grid of counts with sieve bounds, normalized ratios and a fitted exponent."""

    field: FieldSpec
    family: TupleFamily
    exponent: Fraction
    rows: list[ReportRow]
    fitted_exponent: float | None
    gamma: Fraction
    excluded_primes: tuple[int, ...]

    def to_csv(self) -> str:
        lines = ["x,S,bound_num,bound_den,ratio,exponent_fit"]
        fit = "" if self.fitted_exponent is None else format(self.fitted_exponent, ".12g")
        for row in self.rows:
            lines.append(
                f"{row.x},{row.count},{row.bound.numerator},{row.bound.denominator},"
                f"{format(row.ratio, '.12g')},{fit}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self, timestamp: str | None = None) -> str:
        doc = {
            "field": self.field.label,
            "family": str(self.family),
            "exponent": str(self.exponent),
            "fitted_exponent": self.fitted_exponent,
            "gamma": str(self.gamma),
            "excluded_primes": list(self.excluded_primes),
            "rows": [
                {
                    "x": row.x,
                    "S": row.count,
                    "bound": f"{row.bound.numerator}/{row.bound.denominator}",
                    "ratio": row.ratio,
                }
                for row in self.rows
            ],
        }
        if timestamp is not None:
            doc["generated_at"] = timestamp
        return json.dumps(doc, indent=2) + "\n"


def scan(field: FieldSpec, family: TupleFamily, x_grid: list[int], y_rule="sqrt") -> CountReport:
    """Counts, sieve bounds and normalized ratios over an increasing grid.

    ``y_rule`` is either the string "sqrt" (sieve parameter Y = sqrt(x),
    applied exactly as Y**2 = x) or a fixed numeric Y used at every grid
    point.
    """
    from . import asym, sieve

    grid = [int(x) for x in x_grid]
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"grid must be nonempty and strictly increasing, got {x_grid}")
    system = sieve.sieve_system(field, family)
    counts = count_S_grid(field, family, grid)
    exponent = normalizing_exponent(field, family)
    exp_float = float(exponent)
    rows = []
    for x, s in zip(grid, counts):
        bound = sieve.selberg_upper_bound(system, x, y_rule)
        ratio = s * log(x) ** exp_float / x
        rows.append(ReportRow(x, s, bound, ratio))
    usable = [(x, s) for x, s in zip(grid, counts) if s > 0]
    fitted = asym.fit_exponent(usable) if len(usable) >= 3 else None
    primes, gamma = sieve.gamma_factor(system)
    return CountReport(field, family, exponent, rows, fitted, gamma, primes)
