"""Command-line interface.

Subcommands: gaps, records, smooth, tuple, rankin, scan, explore. Every
subcommand accepts --out PATH (default: stdout) and --format {json,csv}.
Exit codes: 0 success, 2 validation error, 3 resource exhaustion (budget,
overflow, or I/O failure).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from gapforge import explorer, primes, rankin, smooth, tuples
from gapforge.errors import (
    GapforgeError,
    IoFailure,
    ResourceExhausted,
    ValidationFailure,
)
from gapforge.numeric import (
    NormalizerSpec,
    const_normalizer,
    g_log_normalizer,
    log_normalizer,
    power_normalizer,
)


def _resolve_normalizer(tag: str) -> NormalizerSpec:
    """Map a --f argument to a normalizer: a named builtin or file:<path>
    pointing at a JSON spec {"kind", "name"?, "scale"?, "epsilon"?, ...}."""
    if tag == "log":
        return log_normalizer()
    if tag == "g-log":
        return g_log_normalizer()
    if tag == "const":
        return const_normalizer()
    if tag.startswith("file:"):
        path = tag[len("file:") :]
        try:
            with open(path, encoding="utf-8") as fh:
                spec = json.load(fh)
        except OSError as exc:
            raise IoFailure(f"cannot read normalizer spec {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValueError(f"normalizer spec {path} is not valid JSON: {exc}") from exc
        kind = spec.get("kind")
        scale = float(spec.get("scale", 1.0))
        epsilon = float(spec.get("epsilon", 0.05))
        if kind == "log":
            f = log_normalizer(scale, epsilon)
        elif kind == "g-log":
            f = g_log_normalizer(scale, epsilon)
        elif kind == "const":
            f = const_normalizer(scale, epsilon)
        elif kind == "power":
            f = power_normalizer(float(spec["exponent"]), scale, epsilon)
        else:
            raise ValueError(f"unknown normalizer kind {kind!r} in {path}")
        if "name" in spec:
            f = replace(f, name=str(spec["name"]))
        return f
    raise ValueError(f"unknown normalizer {tag!r} (use log, g-log, const, or file:<path>)")


def _parse_offsets(value: str) -> tuple[int, ...]:
    """Tuple offsets: either a comma list '0,2,6' or a JSON file holding a
    list or an object with an "h" key."""
    if "," in value or value.strip().lstrip("-").isdigit():
        return tuple(int(part) for part in value.split(",") if part.strip())
    path = Path(value)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read tuple file {value}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"tuple file {value} is not valid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("h")
    if not isinstance(data, list):
        raise ValueError(f"tuple file {value} must hold a list or an 'h' key")
    return tuple(int(x) for x in data)


def _emit(args, report) -> None:
    if args.out:
        explorer.emit_report(report, args.format, args.out)
    else:
        sys.stdout.write(explorer.render_report(report, args.format))


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_gaps(args) -> None:
    f = _resolve_normalizer(args.f)
    samples = tuple(explorer.normalized_gaps(args.lo, args.hi, f))
    _emit(args, explorer.GapsReport(args.lo, args.hi, f.name, samples))


def _cmd_records(args) -> None:
    records = tuple(primes.max_gap_records(args.limit))
    _emit(args, explorer.RecordsReport(args.limit, records))


def _cmd_smooth(args) -> None:
    count = smooth.count_smooth(args.x, args.y, o1=args.o1)
    _emit(
        args,
        explorer.SmoothReport(
            count.x, count.y, count.exact, count.bound, count.rho_estimate
        ),
    )


def _cmd_tuple(args) -> None:
    targets = tuple(float(part) for part in args.targets.split(",") if part.strip())
    constraint = tuples.PlacementConstraint(
        targets=targets, eta=args.eta, q0=args.q0, cap=args.cap
    )
    _emit(args, explorer.TupleReport(tuples.place_prime_tuple(constraint)))


def _cmd_rankin(args) -> None:
    offsets = _parse_offsets(args.tuple) if args.tuple else ()
    H = tuples.AdmissibleTuple.from_offsets(offsets) if offsets else tuples.EMPTY_TUPLE
    if args.v is not None or args.y is not None or args.U is not None:
        if args.v is None or args.y is None or args.U is None:
            raise ValueError("overrides --v, --y, --U must be given together")
        config = rankin.RankinConfig(
            L=args.L, v=args.v, y=args.y, U=args.U, H=H, q0=args.q0, k=args.k
        )
    else:
        config = rankin.derive_params(args.L, args.k if args.k is not None else H.k, H=H, q0=args.q0)
    record = rankin.run_construction(config, args.strategy, zbound=args.zbound)
    _emit(args, record)


def _cmd_scan(args) -> None:
    offsets = _parse_offsets(args.tuple)
    m = args.m if args.m is not None else len(offsets)
    _emit(args, explorer.cluster_scan(args.z, args.w, offsets, args.lo, args.hi, m))


def _cmd_explore(args) -> None:
    f = _resolve_normalizer(args.f)
    _emit(
        args,
        explorer.explore_report(
            args.lo, args.hi, f, args.grid, hit_threshold=args.hit_threshold
        ),
    )


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapforge",
        description="Prime gap exploration: sieves, covering constructions, "
        "tuples, smooth counts, cluster scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("gaps", help="normalized prime gaps over a range")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--f", default="log", help="normalizer: log, g-log, const, file:<spec>")
    common(p)
    p.set_defaults(func=_cmd_gaps)

    p = sub.add_parser("records", help="first-occurrence maximal gap records")
    p.add_argument("--limit", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_records)

    p = sub.add_parser("smooth", help="smooth-number count with bound and rho estimate")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--o1", type=float, default=0.0, help="surrogate for the bound's o(1) term")
    common(p)
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("tuple", help="place an admissible prime tuple near targets")
    p.add_argument("--targets", required=True, help="comma list of window targets")
    p.add_argument("--eta", type=float, required=True, help="relative window width")
    p.add_argument("--q0", type=int, default=None, help="prime that must not divide differences")
    p.add_argument("--cap", type=int, default=None, help="upper bound on members")
    common(p)
    p.set_defaults(func=_cmd_tuple)

    p = sub.add_parser("rankin", help="run the covering construction")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--v", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--U", type=int, default=None)
    p.add_argument("--q0", type=int, default=None)
    p.add_argument("--tuple", default=None, help="offsets to keep coprime: comma list or JSON file")
    p.add_argument("--strategy", choices=("erdos-rankin", "maynard"), default="erdos-rankin")
    p.add_argument("--zbound", type=int, default=None, help="fixed-class threshold (maynard only)")
    common(p)
    p.set_defaults(func=_cmd_rankin)

    p = sub.add_parser("scan", help="scan a progression for prime-rich tuple translates")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--tuple", required=True, help="offsets: comma list or JSON file")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="minimum primes per hit (default: all offsets)")
    common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("explore", help="limit-set histogram and octave minima")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--f", default="log")
    p.add_argument("--grid", type=float, default=0.05, help="histogram cell width")
    p.add_argument("--hit-threshold", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_explore)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValidationFailure, ValueError) as exc:
        print(f"gapforge: {exc}", file=sys.stderr)
        return 2
    except (ResourceExhausted, IoFailure, OverflowError) as exc:
        print(f"gapforge: {exc}", file=sys.stderr)
        return 3
    except GapforgeError as exc:
        print(f"gapforge: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
