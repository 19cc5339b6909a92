"""Batch command-line front-end.

Subcommands map one-to-one onto library operations; all numeric output is
deterministic (exact rationals rendered as num/den, reals as 12-significant-
digit decimals, fixed row order).  Diagnostics go to stderr only, so
redirected CSV stays clean.

Exit codes: 0 success, 1 validation or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import asym, bnum, sieve, tuples
from .field import parse_field, pi_class, residue_degree

# experiment-config keys (flat key = value file); CLI flags override these
_CONFIG_KEYS = ("field", "family", "grid", "y_rule", "seed", "csv", "json")


def _real(v: float) -> str:
    return format(v, ".12g")


def load_config(path: str) -> dict[str, str]:
    """Flat key=value config; '#' starts a comment, blank lines ignored."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or not key:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value.strip()
    return values


def _grid(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"grid {text!r} must be comma-separated integers") from None


def _y_rule(text: str):
    text = str(text)
    if text == "sqrt":
        return "sqrt"
    if text.startswith("fixed:"):
        text = text.split(":", 1)[1]
    try:
        return Fraction(text)
    except ValueError:
        raise ValueError(f"y rule must be 'sqrt' or 'fixed:<Y>', got {text!r}") from None


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="btuples",
        description="B-number indicators, tuple counts and exact sieve bounds",
    )
    parser.add_argument("--config", help="flat key=value config file; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)
    commands: dict[str, argparse.ArgumentParser] = {}

    p = commands["field-info"] = sub.add_parser(
        "field-info", help="field data and optional per-prime splits"
    )
    p.add_argument("--field", required=True)
    p.add_argument("--p", action="append", type=int, default=None,
                   help="prime to decompose (repeatable)")

    p = commands["bnum"] = sub.add_parser("bnum", help="indicator of one value or a window")
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)

    p = commands["count"] = sub.add_parser("count", help="simultaneous-hit count S(x)")
    p.add_argument("--field", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--x", type=int, required=True)

    p = commands["scan"] = sub.add_parser("scan", help="counts, bounds and ratios over a grid")
    p.add_argument("--field")
    p.add_argument("--family")
    p.add_argument("--grid", help="comma-separated increasing x values")
    p.add_argument("--y-rule", default="sqrt", help="'sqrt' or 'fixed:<Y>'")
    p.add_argument("--seed", type=int, default=0,
                   help="factorization schedule seed, recorded for reproducibility")
    p.add_argument("--csv", help="write CSV here instead of stdout")
    p.add_argument("--json", help="also write a JSON document here")

    p = commands["bound"] = sub.add_parser("bound", help="exact sieve upper bound at one x")
    p.add_argument("--field", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", default="sqrt", help="'sqrt' (default) or a numeric Y > 1")

    p = commands["gamma"] = sub.add_parser(
        "gamma", help="excluded primes and compensation factor"
    )
    p.add_argument("--field", required=True)
    p.add_argument("--family", required=True)

    p = commands["verify-prop"] = sub.add_parser(
        "verify-prop", help="exhaustive clause checks at one prime"
    )
    p.add_argument("--field", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha-max", type=int, default=4)
    p.add_argument("--json", help="write the JSON report here")

    p = commands["tauberian"] = sub.add_parser(
        "tauberian", help="restricted multiplicative partial sum"
    )
    p.add_argument("--field", required=True)
    p.add_argument("--tuple-size", type=int, default=2, dest="tuple_size")
    p.add_argument("--t", type=float, required=True)

    p = commands["landau"] = sub.add_parser("landau", help="B-number density ratio at x")
    p.add_argument("--field", required=True)
    p.add_argument("--x", type=int, required=True)

    return parser, commands


def _run_field_info(args, out) -> None:
    fld = parse_field(args.field)
    support = ",".join(str(p) for p in sorted(fld.discriminant_support))
    out.write(f"field={fld.label} kind={fld.kind} degree={fld.degree} disc_support={{{support}}}\n")
    for p in args.p or []:
        split = residue_degree(fld, p)
        cls = pi_class(fld, p)
        cls_text = "-" if cls is None else str(cls)
        out.write(
            f"p={p} f={split.f} e={split.e} g={split.g} "
            f"ramified={'yes' if split.ramified else 'no'} class={cls_text}\n"
        )


def _run_bnum(args, out) -> None:
    fld = parse_field(args.field)
    if args.n is not None:
        out.write(f"{1 if bnum.is_b_number(fld, args.n) else 0}\n")
        return
    if args.lo is None or args.hi is None:
        raise ValueError("bnum needs either --n or both --lo and --hi")
    window = bnum.b_indicator_range(fld, args.lo, args.hi)
    out.write("".join("1" if b else "0" for b in window.bits.tolist()) + "\n")


def _run_scan(args, out) -> None:
    for name in ("field", "family", "grid"):
        if getattr(args, name) in (None, ""):
            raise ValueError(f"scan needs --{name} (flag or config file)")
    fld = parse_field(args.field)
    family = tuples.parse_family(args.family)
    report = tuples.scan(fld, family, _grid(args.grid), _y_rule(args.y_rule))
    csv_text = report.to_csv()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
    else:
        out.write(csv_text)
    if args.json:
        stamp = datetime.now(timezone.utc).isoformat()
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(timestamp=stamp))


def _run_verify(args, out) -> None:
    fld = parse_field(args.field)
    family = tuples.parse_family(args.family)
    system = sieve.sieve_system(fld, family)
    report = sieve.verify_proposition(system, int(args.p), int(args.alpha_max))
    for name, clause in report.clauses.items():
        status = "PASS" if clause.passed else "FAIL"
        extra = "" if clause.witness is None else f" witness={clause.witness}"
        out.write(f"clause {name}: {status} checked={clause.checked}{extra}\n")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, commands = build_parser()

    # two-phase parse so config values become defaults that flags override
    probe, _ = parser.parse_known_args(argv)
    if getattr(probe, "config", None):
        config = load_config(probe.config)
        for command in commands.values():
            known = {a.dest for a in command._actions}
            command.set_defaults(**{k: v for k, v in config.items() if k in known})

    args = parser.parse_args(argv)
    if args.command == "field-info":
        _run_field_info(args, out)
    elif args.command == "bnum":
        _run_bnum(args, out)
    elif args.command == "count":
        fld = parse_field(args.field)
        family = tuples.parse_family(args.family)
        out.write(f"{tuples.count_S(fld, family, int(args.x))}\n")
    elif args.command == "scan":
        _run_scan(args, out)
    elif args.command == "bound":
        fld = parse_field(args.field)
        family = tuples.parse_family(args.family)
        system = sieve.sieve_system(fld, family)
        y = "sqrt" if args.y == "sqrt" else Fraction(str(args.y))
        value = sieve.selberg_upper_bound(system, int(args.x), y)
        out.write(f"{value.numerator}/{value.denominator}\n")
    elif args.command == "gamma":
        fld = parse_field(args.field)
        family = tuples.parse_family(args.family)
        system = sieve.sieve_system(fld, family)
        primes, gamma = sieve.gamma_factor(system)
        listed = ",".join(str(p) for p in primes)
        out.write(f"Pi'={{{listed}}} gamma={gamma}\n")
    elif args.command == "verify-prop":
        _run_verify(args, out)
    elif args.command == "tauberian":
        fld = parse_field(args.field)
        value = asym.tauberian_partial(fld, int(args.tuple_size), float(args.t))
        out.write(f"{_real(value)}\n")
    elif args.command == "landau":
        fld = parse_field(args.field)
        out.write(f"{_real(asym.landau_ratio(fld, int(args.x)))}\n")
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except (ValueError, ArithmeticError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
