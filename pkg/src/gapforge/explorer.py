"""Empirical exploration of prime gaps and prime clusters.

Gap ratios d/f(p) for a chosen normalizer f, histogram estimates of the
values those ratios attain, scans of arithmetic progressions for tuple
translates rich in primes, and flat-file report emission. Estimates here are
strictly finite witnesses: a histogram cell being hit proves the value was
attained in range, nothing more.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from gapforge import primes as _primes
from gapforge.errors import IoFailure
from gapforge.numeric import NormalizerSpec
from gapforge.tuples import AdmissibleTuple

# how many members of a normalizer family may miss the full gap spectrum:
# the source material quotes three mutually inconsistent counts, so reports
# carry all three rather than picking one
FAMILY_EXCLUSION_BOUNDS = (49, 98, 99)

_SCAN_CHUNK = 1 << 20


class NormalizedGap(NamedTuple):
    p: int
    d: int
    ratio: float


def normalized_gaps(lo: int, hi: int, f: NormalizerSpec) -> Iterator[NormalizedGap]:
    """Stream (p, d, d/f(p)) over every consecutive-prime gap in [lo, hi].

    The normalizer is evaluated at the prime p itself, not at its ordinal
    index; every report records that convention.
    """
    if lo >= hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    for p, d, _ in _primes.gaps_in(lo, hi):
        v = f.eval(p)
        if v <= 0:
            raise ValueError(f"normalizer {f.name} is not positive at {p}")
        yield NormalizedGap(p, d, d / v)


# ---------------------------------------------------------------------------
# limit-set histograms


@dataclass(frozen=True)
class LimitSetEstimate:
    """Histogram of attained ratio values on a δ-grid.

    cells maps cell index j to the count of samples in [jδ, (j+1)δ). A cell
    is a "hit" when its count reaches hit_threshold. Witness-only: cells say
    which values occurred in range, never what accumulates asymptotically.
    """

    grid_step: float
    cells: dict[int, int]
    sample_count: int
    lo: int = 0
    hi: int = 0
    normalizer: str = ""
    hit_threshold: int = 1

    kind = "limit-set"

    def hit_cells(self) -> list[tuple[int, int]]:
        return sorted((j, c) for j, c in self.cells.items() if c >= self.hit_threshold)

    def hit_measure(self) -> float:
        """Total length of hit cells; empirical, no density claim."""
        return len(self.hit_cells()) * self.grid_step

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "normalizer": self.normalizer,
            "normalizer_evaluated_at": "prime",
            "grid_step": self.grid_step,
            "range": [self.lo, self.hi],
            "sample_count": self.sample_count,
            "hit_threshold": self.hit_threshold,
            "hit_measure": self.hit_measure(),
            "cells": {str(j): c for j, c in sorted(self.cells.items())},
            "note": "witness-only estimate: hit cells record attained values",
        }

    def csv_header(self) -> list[str]:
        return ["cell", "cell_lo", "count", "hit"]

    def csv_rows(self) -> Iterator[list]:
        for j, c in sorted(self.cells.items()):
            yield [j, j * self.grid_step, c, int(c >= self.hit_threshold)]


def empirical_limit_set(
    samples: Iterable[float],
    grid_step: float,
    *,
    hit_threshold: int = 1,
    lo: int = 0,
    hi: int = 0,
    normalizer: str = "",
) -> LimitSetEstimate:
    """Bin samples into δ-cells; every sample lands in exactly one cell."""
    if grid_step <= 0:
        raise ValueError(f"need grid_step > 0, got {grid_step}")
    cells: dict[int, int] = {}
    n = 0
    for r in samples:
        j = math.floor(r / grid_step)
        cells[j] = cells.get(j, 0) + 1
        n += 1
    return LimitSetEstimate(
        grid_step=grid_step,
        cells=cells,
        sample_count=n,
        lo=lo,
        hi=hi,
        normalizer=normalizer,
        hit_threshold=hit_threshold,
    )


# ---------------------------------------------------------------------------
# cluster scan over a progression


class ScanHit(NamedTuple):
    n: int
    mask: int  # bit i set iff n + offsets[i] is prime
    count: int


@dataclass(frozen=True)
class ClusterScanResult:
    """All n ≡ z (mod W) in (lo, hi] whose translate n + H holds >= m primes."""

    z: int
    W: int
    offsets: tuple[int, ...]
    lo: int
    hi: int
    m: int
    hits: tuple[ScanHit, ...]

    kind = "scan"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "z": str(self.z),
            "W": str(self.W),
            "offsets": list(self.offsets),
            "range": [self.lo, self.hi],
            "m": self.m,
            "hit_count": len(self.hits),
            "hits": [[h.n, h.mask, h.count] for h in self.hits],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ClusterScanResult":
        return cls(
            z=int(d["z"]),
            W=int(d["W"]),
            offsets=tuple(d["offsets"]),
            lo=d["range"][0],
            hi=d["range"][1],
            m=d["m"],
            hits=tuple(ScanHit(*row) for row in d["hits"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "ClusterScanResult":
        return cls.from_json_dict(json.loads(text))

    def csv_header(self) -> list[str]:
        return ["n", "mask", "count"]

    def csv_rows(self) -> Iterator[list]:
        for h in self.hits:
            yield [h.n, h.mask, h.count]


def _offsets_of(H) -> tuple[int, ...]:
    if isinstance(H, AdmissibleTuple):
        return H.h
    return tuple(H)


def cluster_scan(z: int, W: int, H, lo: int, hi: int, m: int) -> ClusterScanResult:
    """Exhaustive ascending scan of {n ≡ z (mod W)} ∩ (lo, hi].

    Primality of every n + h is read off sieve bits, chunked so memory stays
    bounded; the mask records exactly which offsets landed on primes.
    """
    offsets = _offsets_of(H)
    if not 0 <= z < W:
        raise ValueError(f"need 0 <= z < W, got z={z}, W={W}")
    if lo >= hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi}]")
    max_h = max(offsets, default=0)
    if hi + max_h >= _primes.NATIVE_WIDTH:
        raise ValueError("scan range exceeds the native scan domain")
    hits: list[ScanHit] = []
    n = lo + 1 + ((z - (lo + 1)) % W)
    while n <= hi:
        chunk_hi = min(n + _SCAN_CHUNK, hi)
        seg = _primes.sieve_range(max(2, n), chunk_hi + max_h + 2)
        while n <= chunk_hi:
            mask = 0
            for i, h in enumerate(offsets):
                t = n + h
                if t >= 2 and t in seg:
                    mask |= 1 << i
            count = mask.bit_count()
            if count >= m:
                hits.append(ScanHit(n, mask, count))
            n += W
    return ClusterScanResult(z, W, offsets, lo, hi, m, tuple(hits))


# ---------------------------------------------------------------------------
# consecutive-gap runs


class GapRun(NamedTuple):
    """m consecutive gaps, all of normalized size >= the threshold."""

    p: int  # prime opening the first gap of the run
    gaps: tuple[int, ...]
    ratios: tuple[float, ...]
    min_ratio: float


def consecutive_gap_cluster(
    lo: int, hi: int, m: int, threshold: float, f: NormalizerSpec
) -> list[GapRun]:
    """Every window of m consecutive gaps in [lo, hi] with all ratios >=
    threshold; overlapping windows each reported, with the window minimum."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    window: list[NormalizedGap] = []
    runs: list[GapRun] = []
    for sample in normalized_gaps(lo, hi, f):
        window.append(sample)
        if len(window) > m:
            window.pop(0)
        if len(window) == m and all(s.ratio >= threshold for s in window):
            runs.append(
                GapRun(
                    p=window[0].p,
                    gaps=tuple(s.d for s in window),
                    ratios=tuple(s.ratio for s in window),
                    min_ratio=min(s.ratio for s in window),
                )
            )
    return runs


# ---------------------------------------------------------------------------
# octave metrics and the explore report


class OctaveStat(NamedTuple):
    n_lo: int
    n_hi: int
    samples: int
    min_ratio: float
    at_p: int
    running_min: float


def octave_minima(lo: int, hi: int, f: NormalizerSpec) -> list[OctaveStat]:
    """Minimum normalized gap per doubling window (N, 2N], N = lo, 2lo, ...,
    with the running minimum across windows (nonincreasing by definition)."""
    stats: list[OctaveStat] = []
    w_lo = max(lo, 1)
    w_hi = 2 * w_lo
    cur: list[NormalizedGap] = []
    running = math.inf

    def flush() -> None:
        nonlocal running
        if cur:
            best = min(cur, key=lambda s: s.ratio)
            running = min(running, best.ratio)
            stats.append(OctaveStat(w_lo, w_hi, len(cur), best.ratio, best.p, running))

    for sample in normalized_gaps(lo, hi, f):
        while sample.p > w_hi:
            flush()
            cur = []
            w_lo, w_hi = w_hi, 2 * w_hi
        if sample.p > w_lo:
            cur.append(sample)
    flush()
    return stats


@dataclass(frozen=True)
class ExploreReport:
    """One-stop survey: histogram estimate plus per-octave minima."""

    lo: int
    hi: int
    normalizer: str
    limit_set: LimitSetEstimate
    octaves: tuple[OctaveStat, ...]
    notes: dict = field(default_factory=dict)

    kind = "explore"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "range": [self.lo, self.hi],
            "normalizer": self.normalizer,
            "normalizer_evaluated_at": "prime",
            "limit_set": self.limit_set.to_json_dict(),
            "octaves": [s._asdict() for s in self.octaves],
            "notes": self.notes,
        }

    def csv_header(self) -> list[str]:
        return self.limit_set.csv_header()

    def csv_rows(self) -> Iterator[list]:
        return self.limit_set.csv_rows()


def explore_report(
    lo: int,
    hi: int,
    f: NormalizerSpec,
    grid_step: float,
    *,
    hit_threshold: int = 1,
) -> ExploreReport:
    samples = list(normalized_gaps(lo, hi, f))
    estimate = empirical_limit_set(
        (s.ratio for s in samples),
        grid_step,
        hit_threshold=hit_threshold,
        lo=lo,
        hi=hi,
        normalizer=f.name,
    )
    return ExploreReport(
        lo=lo,
        hi=hi,
        normalizer=f.name,
        limit_set=estimate,
        octaves=tuple(octave_minima(lo, hi, f)),
        notes={
            "family_exclusion_bounds": list(FAMILY_EXCLUSION_BOUNDS),
            "claim": "witness-only: attained values, not limit points",
        },
    )


# ---------------------------------------------------------------------------
# simple report wrappers for the CLI


@dataclass(frozen=True)
class GapsReport:
    lo: int
    hi: int
    normalizer: str
    samples: tuple[NormalizedGap, ...]

    kind = "gaps"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "range": [self.lo, self.hi],
            "normalizer": self.normalizer,
            "normalizer_evaluated_at": "prime",
            "sample_count": len(self.samples),
            "samples": [[s.p, s.d, s.ratio] for s in self.samples],
        }

    def csv_header(self) -> list[str]:
        return ["p", "d", "ratio"]

    def csv_rows(self) -> Iterator[list]:
        for s in self.samples:
            yield [s.p, s.d, s.ratio]


@dataclass(frozen=True)
class RecordsReport:
    limit: int
    records: tuple

    kind = "records"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "limit": self.limit,
            "records": [[r.p, r.d] for r in self.records],
        }

    def csv_header(self) -> list[str]:
        return ["p", "d"]

    def csv_rows(self) -> Iterator[list]:
        for r in self.records:
            yield [r.p, r.d]


@dataclass(frozen=True)
class SmoothReport:
    x: int
    y: int
    exact: int
    bound: float | None
    rho_estimate: float

    kind = "smooth"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "x": self.x,
            "y": self.y,
            "exact": self.exact,
            "bound": self.bound,
            "rho_estimate": self.rho_estimate,
            "note": "bound is asymptotic and may fall below exact at small scale",
        }

    def csv_header(self) -> list[str]:
        return ["x", "y", "exact", "bound", "rho_estimate"]

    def csv_rows(self) -> Iterator[list]:
        yield [self.x, self.y, self.exact, self.bound, self.rho_estimate]


@dataclass(frozen=True)
class TupleReport:
    tuple_: AdmissibleTuple

    kind = "tuple"

    def to_json_dict(self) -> dict:
        t = self.tuple_
        return {
            "kind": self.kind,
            "h": list(t.h),
            "k": t.k,
            "delta": str(t.delta),
            "delta_radical": str(t.delta_radical),
            "admissible": t.admissible,
        }

    def csv_header(self) -> list[str]:
        return ["i", "h"]

    def csv_rows(self) -> Iterator[list]:
        for i, h in enumerate(self.tuple_.h, start=1):
            yield [i, h]


# ---------------------------------------------------------------------------
# emission


def render_report(report, fmt: str = "json") -> str:
    """Serialize any report object to its JSON or CSV text form.

    JSON carries the full record with arbitrary-precision integers as decimal
    strings; CSV is a single table with one header row.
    """
    if fmt == "json":
        return json.dumps(report.to_json_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.csv_header())
        for row in report.csv_rows():
            writer.writerow(row)
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report, fmt: str, path) -> None:
    """Write the serialized report to path; I/O trouble surfaces as IoFailure."""
    text = render_report(report, fmt)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write report to {path}: {exc}") from exc
