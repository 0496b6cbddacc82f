"""Covering-congruence constructions over a bounded prime stock.

The goal: choose one residue class z_p for every prime p in the stock so that
every integer s in (1, U] except the designated tuple H falls into some class
(z_p + s divisible by p), while every h in H stays coprime to the whole
modulus W. The classic schedule partitions the stock into four bands by size
and spends them in stages: a zero stage (P1 and P3 at z_p = 0), a greedy
class-census stage (P2), a cleanup stage (P4), and a final sweep that gives
every remaining modulus a harmless class. A variant schedule fixes the small
bands to constant classes and leaves all the choosing to the greedy stage.

Everything here is deterministic: primes are processed ascending and ties are
broken by the smallest residue value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, NamedTuple, Sequence

from gapforge import primes as _primes
from gapforge.errors import (
    HViolation,
    NoAllowedClass,
    OrderingViolated,
    UnclassifiableForm,
)
from gapforge.numeric import DEFAULT_CONSTANTS, GrowthConstants, rankin_g, iter_log
from gapforge.tuples import EMPTY_TUPLE, AdmissibleTuple
from gapforge.errors import UndefinedIterate


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RankinConfig:
    """Parameter block for one construction run.

    Orderings enforced: 2 <= v < y <= L/2 < L <= U. The tuple H and the
    optional exceptional prime q0 are excluded from the prime stock. k is the
    tuple-size parameter of the schedule formulas; it defaults to len(H).
    """

    L: int
    v: int
    y: int
    U: int
    H: AdmissibleTuple = EMPTY_TUPLE
    q0: int | None = None
    k: int | None = None
    o1_surrogates: Mapping[str, float] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.k is None:
            object.__setattr__(self, "k", self.H.k)
        problems = []
        if not 2 <= self.v:
            problems.append(f"v={self.v} < 2")
        if not self.v < self.y:
            problems.append(f"v={self.v} >= y={self.y}")
        if not 2 * self.y <= self.L:
            problems.append(f"y={self.y} > L/2={self.L / 2}")
        if not self.L <= self.U:
            problems.append(f"U={self.U} < L={self.L}")
        if problems:
            raise OrderingViolated("; ".join(problems))
        if not self.H.admissible:
            raise ValueError(f"tuple {self.H.h} is not admissible")
        if self.q0 is not None:
            if not _primes.is_prime(self.q0):
                raise ValueError(f"q0={self.q0} is not prime")
            if self.q0 in self.H.h:
                raise ValueError(f"q0={self.q0} collides with the tuple")

    @property
    def h_set(self) -> frozenset[int]:
        return frozenset(self.H.h)

    @property
    def excluded(self) -> frozenset[int]:
        """Prime-stock exclusions: tuple members plus q0."""
        out = set(self.H.h)
        if self.q0 is not None:
            out.add(self.q0)
        return frozenset(out)


def schedule_thresholds(L: float, k: int) -> tuple[int, int]:
    """The asymptotic threshold formulas, floored to integers:
    v = (ln L)^3 and y = exp(ln L * ln_3 L / ((k + 5) * ln_2 L))."""
    lnL = math.log(L)
    v = math.floor(lnL**3)
    l2, l3 = math.log(lnL), math.log(math.log(lnL))
    y = math.floor(math.exp(lnL * l3 / ((k + 5) * l2)))
    return v, y


def derive_params(
    L: int,
    k: int,
    *,
    constants: GrowthConstants = DEFAULT_CONSTANTS,
    H: AdmissibleTuple = EMPTY_TUPLE,
    q0: int | None = None,
) -> RankinConfig:
    """Schedule formulas: v = floor(log(L)^3), y from the (k+5)-damped ratio,
    U = c10 * g(e^L) * L with a flagged L * ceil(c10) fallback when g is
    undefined at e^L.

    At desk scales these formulas usually violate the orderings; the error
    then names every violated inequality so overrides can be chosen.
    """
    if L < 16:
        raise ValueError(f"need L >= 16, got {L}")
    if k < 0:
        raise ValueError("need k >= 0")
    v, y = schedule_thresholds(L, k)
    flags: tuple[str, ...] = ()
    try:
        g = rankin_g(ln_x=float(L))
        U = math.floor(constants.c10 * g * L)
    except UndefinedIterate:
        U = L * math.ceil(constants.c10)
        flags = ("u-fallback",)
    return RankinConfig(L=L, v=v, y=y, U=U, H=H, q0=q0, k=k, flags=flags)


# ---------------------------------------------------------------------------
# prime stock


@dataclass(frozen=True)
class PrimePartition:
    """The four prime bands (v, y, L/2, L breakpoints), exclusions removed."""

    p1: tuple[int, ...]
    p2: tuple[int, ...]
    p3: tuple[int, ...]
    p4: tuple[int, ...]
    excluded: tuple[int, ...]

    def stock(self) -> tuple[int, ...]:
        return self.p1 + self.p2 + self.p3 + self.p4

    def sizes(self) -> dict[str, int]:
        return {"p1": len(self.p1), "p2": len(self.p2), "p3": len(self.p3), "p4": len(self.p4)}


def partition_primes(config: RankinConfig) -> PrimePartition:
    """Band every prime <= L by size, skipping tuple members and q0."""
    bands: tuple[list[int], ...] = ([], [], [], [])
    excluded = []
    for p in _primes.primes_up_to(config.L):
        if p in config.excluded:
            excluded.append(p)
            continue
        if p <= config.v:
            bands[0].append(p)
        elif p <= config.y:
            bands[1].append(p)
        elif 2 * p <= config.L:
            bands[2].append(p)
        else:
            bands[3].append(p)
    return PrimePartition(*(tuple(b) for b in bands), tuple(excluded))


# ---------------------------------------------------------------------------
# survivor tracking


class TraceStep(NamedTuple):
    """One residue decision: which prime, which class, what it removed."""

    stage: str
    p: int
    z_p: int
    removed: int
    remaining: int


@dataclass
class SurvivorSet:
    """Live survivor pool with the decision trace that shaped it."""

    survivors: set[int]
    history: list[TraceStep] = field(default_factory=list)
    exceptional: frozenset[int] | None = None
    exceptional_rest: frozenset[int] | None = None

    def sorted(self) -> list[int]:
        return sorted(self.survivors)


def stage_zero(config: RankinConfig, partition: PrimePartition) -> tuple[dict[int, int], SurvivorSet]:
    """Fix z_p = 0 on the P1 and P3 bands; survivors are the coprime residue
    of (1, U]. Removals are traced per prime in ascending order."""
    for h in config.H.h:
        for p in (*partition.p1, *partition.p3):
            if h % p == 0:
                raise ValueError(
                    f"tuple member {h} shares factor {p} with a zero-stage prime"
                )
    alive = bytearray(b"\x01" * (config.U + 1))
    alive[0:2] = b"\x00\x00"
    survivors = SurvivorSet(survivors=set())
    assignments: dict[int, int] = {}
    count = config.U - 1
    for p in sorted(partition.p1 + partition.p3):
        removed = 0
        for s in range(p, config.U + 1, p):
            if alive[s]:
                alive[s] = 0
                removed += 1
        count -= removed
        assignments[p] = 0
        survivors.history.append(TraceStep("zero", p, 0, removed, count))
    survivors.survivors = {s for s in range(2, config.U + 1) if alive[s]}
    return assignments, survivors


def _best_class(values: Iterable[int], p: int, forbidden: frozenset[int]) -> tuple[int, int, int] | None:
    """Largest survivor class mod p that is not forbidden.

    Returns (z_p, killed_class, count); z_p kills s = -z_p (mod p). Ties go to
    the smallest z_p. None when every class mod p is forbidden.
    """
    counts = [0] * p
    for s in values:
        counts[s % p] += 1
    best: tuple[int, int, int] | None = None
    for z in range(p):
        cls = (p - z) % p
        if cls in forbidden:
            continue
        if best is None or counts[cls] > best[2]:
            best = (z, cls, counts[cls])
    return best


def greedy_stage(
    survivors: SurvivorSet,
    p2: Sequence[int],
    h: Sequence[int],
    *,
    stop_threshold: int | None = None,
) -> tuple[SurvivorSet, dict[int, int], list[int]]:
    """Spend the P2 band ascending, each prime killing its largest allowed
    survivor class. Classes meeting the tuple (z_p = -h mod p) are barred.

    Once the pool size drops to stop_threshold the remaining primes are
    skipped and reported back for the final sweep. The survivor set is
    updated in place; each decision appends to its trace.
    """
    assignments: dict[int, int] = {}
    skipped: list[int] = []
    pool = survivors.survivors
    for p in sorted(p2):
        if stop_threshold is not None and len(pool) <= stop_threshold:
            skipped.append(p)
            continue
        choice = _best_class(pool, p, frozenset(t % p for t in h))
        if choice is None:
            raise NoAllowedClass(f"every class mod {p} is barred by the tuple")
        z, cls, _count = choice
        doomed = [s for s in pool if s % p == cls]
        pool.difference_update(doomed)
        assignments[p] = z
        survivors.history.append(TraceStep("greedy", p, z, len(doomed), len(pool)))
    return survivors, assignments, skipped


class SurvivorClass(enum.Enum):
    SIEVED = "sieved"
    TYPE_A = "type-a"
    TYPE_B = "type-b"


def classify_survivor(
    s: int,
    config: RankinConfig,
    partition: PrimePartition | None = None,
) -> SurvivorClass:
    """Shape of a survivor: killed by the zero stage (SIEVED), one large prime
    times tuple-and-q0 powers (TYPE_A), or supported entirely on the P2 band,
    q0 and the tuple (TYPE_B). Anything else raises UnclassifiableForm, which
    signals a stock whose bands leave coverage gaps."""
    if s < 2:
        raise ValueError("survivors live in (1, U]")
    if partition is None:
        partition = partition_primes(config)
    if any(s % p == 0 for p in partition.p1 + partition.p3):
        return SurvivorClass.SIEVED
    allowed = set(config.excluded)
    p2_set = set(partition.p2)
    big_mult = 0
    big_prime = None
    p2_seen = False
    for f, e in _primes.factorize(s).items():
        if f in allowed:
            continue
        if f in p2_set:
            p2_seen = True
        elif 2 * f > config.L:
            big_mult += e
            big_prime = f
        else:
            # a small prime outside every band: the stock cannot be sound
            raise UnclassifiableForm(f"survivor {s} has stray factor {f}")
    if big_mult == 0:
        return SurvivorClass.TYPE_B
    if big_mult == 1 and not p2_seen:
        return SurvivorClass.TYPE_A
    raise UnclassifiableForm(
        f"survivor {s} mixes large prime {big_prime} with other factors"
    )


def cleanup_stage(
    survivors: SurvivorSet,
    p4: Sequence[int],
    h: Sequence[int],
) -> tuple[dict[int, int], list[int], tuple[int, ...]]:
    """Cover the exceptional leftovers S' = survivors minus the tuple with the
    P4 band. Each prime takes the allowed class covering the most of what is
    left; primes that cannot cover anything stay unused.

    Returns (assignments, unused primes, still-uncovered elements).
    """
    h_set = set(h)
    rest = {s for s in survivors.survivors if s not in h_set}
    assignments: dict[int, int] = {}
    unused: list[int] = []
    for p in sorted(p4):
        if not rest:
            unused.append(p)
            continue
        choice = _best_class(rest, p, frozenset(t % p for t in h))
        if choice is None or choice[2] == 0:
            unused.append(p)
            continue
        z, cls, _count = choice
        doomed = [s for s in rest if s % p == cls]
        rest.difference_update(doomed)
        survivors.survivors.difference_update(doomed)
        assignments[p] = z
        survivors.history.append(TraceStep("cleanup", p, z, len(doomed), len(rest)))
    return assignments, unused, tuple(sorted(rest))


def assign_remaining(leftover: Sequence[int], h: Sequence[int]) -> dict[int, int]:
    """Give every leftover modulus the smallest class that misses the tuple.

    An allowed class must exist; the tuple cannot occupy all p classes of any
    prime it admits (asserted).
    """
    out: dict[int, int] = {}
    for p in sorted(leftover):
        forbidden = {(-t) % p for t in h}
        assert len(forbidden) < p, f"tuple occupies every class mod {p}"
        out[p] = next(z for z in range(p) if z not in forbidden)
    return out


# ---------------------------------------------------------------------------
# assembly and verification


def assemble_crt(assignments: Mapping[int, int]) -> tuple[int, int]:
    """Combine z = z_p (mod p) over distinct primes into z mod W, W = prod p."""
    z, W = 0, 1
    for p in sorted(assignments):
        a = assignments[p] % p
        t = (a - z) * pow(W, -1, p) % p
        z += W * t
        W *= p
    return z % W if W > 1 else 0, W


@dataclass(frozen=True)
class ResidueSystem:
    """A finished residue choice: per-prime classes and their CRT lift."""

    assignments: Mapping[int, int]
    z: int
    W: int

    @classmethod
    def build(cls, assignments: Mapping[int, int], h: Sequence[int] = ()) -> "ResidueSystem":
        z, W = assemble_crt(assignments)
        for t in h:
            g = math.gcd(z + t, W)
            if g > 1:
                raise HViolation(f"z + {t} shares factor {g} with W")
        return cls(dict(assignments), z, W)


class VerifyResult(NamedTuple):
    covered_prefix: int
    violations: tuple[int, ...]


def verify_construction(z: int, W: int, U: int, h: Sequence[int]) -> VerifyResult:
    """Scan (1, U]: every s outside the tuple must share a factor with W and
    every tuple member must not. A tuple member sharing a factor is fatal
    (HViolation); other misses are returned as violations."""
    h_set = set(h)
    violations = []
    for s in range(2, U + 1):
        g = math.gcd(z + s, W)
        if s in h_set:
            if g > 1:
                raise HViolation(f"tuple member {s}: gcd(z + {s}, W) = {g}")
        elif g == 1:
            violations.append(s)
    prefix = violations[0] - 1 if violations else U
    return VerifyResult(prefix, tuple(violations))


# ---------------------------------------------------------------------------
# the variant schedule: fixed classes below zbound


_MAYNARD_LABELS = ("R", "R-tilde", "R-prime", "R-tilde-prime")


@dataclass(frozen=True)
class MaynardAssignment:
    """Fixed-class assignment a_p (1 below y, 0 up to zbound) and the survivor
    classification it induces. residues holds the same classes in z-convention
    (z_p = -a_p mod p). Fibers key the one-large-prime survivors by their
    smooth part m."""

    zbound: int
    a: Mapping[int, int]
    residues: Mapping[int, int]
    survivors: tuple[int, ...]
    classes: Mapping[int, str]
    fibers: Mapping[int, tuple[int, ...]]
    fibers_tilde: Mapping[int, tuple[int, ...]]


def default_zbound(L: int) -> int:
    """floor(L / log_2 L); the variant's upper fixed threshold."""
    return math.floor(L / iter_log(L, 2))


def _maynard_sieve(U: int, a: Mapping[int, int]) -> list[int]:
    """Survivors of (1, U] under the fixed classes: s != a_p (mod p)."""
    alive = bytearray(b"\x01" * (U + 1))
    alive[0:2] = b"\x00\x00"
    for p, cls in a.items():
        start = cls if cls >= 2 else cls + p
        for s in range(start, U + 1, p):
            alive[s] = 0
    return [s for s in range(2, U + 1) if alive[s]]


def _maynard_classify(
    s: int,
    config: RankinConfig,
    zbound: int,
) -> tuple[str, int]:
    """(label, smooth part m) of a fixed-stage survivor.

    Labels: R (one prime above zbound), R-tilde (the same times q0), R-prime
    (entirely y-smooth), R-tilde-prime (y-smooth times q0). Raises
    UnclassifiableForm for any other shape, including a failed s-1 coprimality
    check at an unassigned q0 <= y.
    """
    q0 = config.q0
    if q0 is not None and q0 <= config.y and (s - 1) % q0 == 0:
        raise UnclassifiableForm(f"survivor {s}: s - 1 hits the excluded prime {q0}")
    q0_mult = 0
    big_mult = 0
    big_prime = None
    m = 1
    for f, e in _primes.factorize(s).items():
        if q0 is not None and f == q0:
            q0_mult = e
        elif f > zbound:
            big_mult += e
            big_prime = f
        elif f > config.y:
            raise UnclassifiableForm(f"survivor {s} kept mid-band factor {f}")
        else:
            m *= f**e
    if q0_mult > 1 or big_mult > 1:
        raise UnclassifiableForm(f"survivor {s} repeats an excluded or large prime")
    label = _MAYNARD_LABELS[(0 if big_mult else 2) + q0_mult]
    return label, m


def maynard_residues(config: RankinConfig, zbound: int | None = None) -> MaynardAssignment:
    """Fixed classes for the variant schedule: a_p = 1 on [2, y], a_p = 0 on
    (y, zbound], q0 excluded; classify every survivor of (1, U]."""
    if zbound is None:
        zbound = default_zbound(config.L)
    if not config.y < zbound <= config.L:
        raise OrderingViolated(f"need y={config.y} < zbound={zbound} <= L={config.L}")
    a: dict[int, int] = {}
    for p in _primes.primes_up_to(zbound):
        if p == config.q0:
            continue
        a[p] = 1 if p <= config.y else 0
    survivors = _maynard_sieve(config.U, a)
    classes: dict[int, str] = {}
    fibers: dict[int, list[int]] = {}
    fibers_tilde: dict[int, list[int]] = {}
    for s in survivors:
        label, m = _maynard_classify(s, config, zbound)
        classes[s] = label
        if label == "R":
            fibers.setdefault(m, []).append(s)
        elif label == "R-tilde":
            fibers_tilde.setdefault(m, []).append(s)
    return MaynardAssignment(
        zbound=zbound,
        a=a,
        residues={p: (-cls) % p for p, cls in a.items()},
        survivors=tuple(survivors),
        classes=classes,
        fibers={m: tuple(v) for m, v in fibers.items()},
        fibers_tilde={m: tuple(v) for m, v in fibers_tilde.items()},
    )


# ---------------------------------------------------------------------------
# full pipeline


@dataclass(frozen=True)
class ConstructionRecord:
    """Everything one construction run decided and what the scan verified."""

    strategy: str
    params: dict
    partition_sizes: dict
    history: tuple[TraceStep, ...]
    system: ResidueSystem
    claimed_coverage: int
    covered_prefix: int
    violations: tuple[int, ...]
    exceptional_size: int
    uncovered: tuple[int, ...]
    survivor_census: dict
    maynard_census: dict | None = None

    @property
    def z(self) -> int:
        return self.system.z

    @property
    def W(self) -> int:
        return self.system.W

    def to_json_dict(self) -> dict:
        return {
            "kind": "construction",
            "strategy": self.strategy,
            "params": self.params,
            "partition_sizes": self.partition_sizes,
            "history": [step._asdict() for step in self.history],
            "z": str(self.z),
            "W": str(self.W),
            "claimed_coverage": self.claimed_coverage,
            "covered_prefix": self.covered_prefix,
            "violations": list(self.violations),
            "exceptional_size": self.exceptional_size,
            "uncovered": list(self.uncovered),
            "survivor_census": self.survivor_census,
            "maynard_census": self.maynard_census,
        }

    # CSV form is the survivor-count trace: one row per residue decision
    def csv_header(self) -> list[str]:
        return ["stage", "p", "z_p", "removed", "remaining"]

    def csv_rows(self):
        for step in self.history:
            yield [step.stage, step.p, step.z_p, step.removed, step.remaining]


def _validate_tuple_for_run(config: RankinConfig) -> None:
    for h in config.H.h:
        if h < 2:
            raise ValueError(f"tuple member {h} < 2 cannot be kept coprime")
    if config.q0 is not None and config.H.delta_radical % config.q0 == 0:
        raise ValueError(f"q0={config.q0} divides the tuple discriminant")


def _greedy_threshold(L: int) -> int:
    return math.floor(L / (5 * math.log(L)))


def _census(survivors: Iterable[int], config: RankinConfig, partition: PrimePartition) -> dict:
    counts = {"type-a": 0, "type-b": 0, "sieved": 0, "mixed": 0}
    for s in survivors:
        try:
            counts[classify_survivor(s, config, partition).value] += 1
        except UnclassifiableForm:
            counts["mixed"] += 1
    return counts


def _apply_incidental(
    assignments: Mapping[int, int],
    rest: set[int],
    history: list[TraceStep],
    stage: str,
) -> None:
    """Leftover classes can cover stragglers for free; keep the books right."""
    for p in sorted(assignments):
        z = assignments[p]
        cls = (p - z) % p
        doomed = [s for s in rest if s % p == cls]
        rest.difference_update(doomed)
        history.append(TraceStep(stage, p, z, len(doomed), len(rest)))


def _params_dict(config: RankinConfig, constants: GrowthConstants, zbound: int | None) -> dict:
    params = {
        "L": config.L,
        "v": config.v,
        "y": config.y,
        "U": config.U,
        "k": config.k,
        "q0": config.q0,
        "H": list(config.H.h),
        "o1_surrogates": dict(config.o1_surrogates),
        "flags": list(config.flags),
        "constants": {
            "c0": constants.c0,
            "c7": constants.c7,
            "c9": constants.c9,
            "c10": constants.c10,
            "defaults_unpinned": constants.defaults_unpinned(),
        },
    }
    if zbound is not None:
        params["zbound"] = zbound
    return params


def run_construction(
    config: RankinConfig,
    strategy: str = "erdos-rankin",
    *,
    zbound: int | None = None,
    constants: GrowthConstants = DEFAULT_CONSTANTS,
) -> ConstructionRecord:
    """Run the full pipeline under the chosen strategy and verify the result.

    The record's claimed_coverage comes from the pipeline's own survivor
    bookkeeping; covered_prefix comes from the independent gcd scan. The two
    must agree exactly and that is asserted before returning.
    """
    if strategy == "erdos-rankin":
        return _run_erdos_rankin(config, constants)
    if strategy == "maynard":
        return _run_maynard(config, constants, zbound)
    raise ValueError(f"unknown strategy {strategy!r}")


def _finish(
    strategy: str,
    config: RankinConfig,
    constants: GrowthConstants,
    partition_sizes: dict,
    assignments: dict[int, int],
    history: list[TraceStep],
    rest: set[int],
    exceptional_size: int,
    census: dict,
    maynard_census: dict | None,
    zbound: int | None,
) -> ConstructionRecord:
    system = ResidueSystem.build(assignments, config.H.h)
    claimed = min(rest) - 1 if rest else config.U
    result = verify_construction(system.z, system.W, config.U, config.H.h)
    assert result.violations == tuple(sorted(rest)), (
        f"bookkeeping drift: scan found {result.violations}, books say {sorted(rest)}"
    )
    assert result.covered_prefix == claimed
    return ConstructionRecord(
        strategy=strategy,
        params=_params_dict(config, constants, zbound),
        partition_sizes=partition_sizes,
        history=tuple(history),
        system=system,
        claimed_coverage=claimed,
        covered_prefix=result.covered_prefix,
        violations=result.violations,
        exceptional_size=exceptional_size,
        uncovered=tuple(sorted(rest)),
        survivor_census=census,
        maynard_census=maynard_census,
    )


def _run_erdos_rankin(config: RankinConfig, constants: GrowthConstants) -> ConstructionRecord:
    _validate_tuple_for_run(config)
    partition = partition_primes(config)
    assignments, survivors = stage_zero(config, partition)
    census = _census(survivors.survivors, config, partition)

    _, greedy_assign, skipped_p2 = greedy_stage(
        survivors, partition.p2, config.H.h, stop_threshold=_greedy_threshold(config.L)
    )
    assignments.update(greedy_assign)

    survivors.exceptional = frozenset(survivors.survivors)
    survivors.exceptional_rest = survivors.exceptional - config.h_set
    cleanup_assign, unused_p4, uncovered = cleanup_stage(survivors, partition.p4, config.H.h)
    assignments.update(cleanup_assign)
    rest = set(uncovered)

    # the final sweep: skipped P2, unused P4, prime tuple members, and any
    # discriminant prime not already carrying a class
    leftover = set(skipped_p2) | set(unused_p4)
    leftover.update(h for h in config.H.h if h < _primes.NATIVE_WIDTH and _primes.is_prime(h))
    leftover.update(_primes.factorize(config.H.delta_radical))
    leftover.difference_update(assignments)
    sweep = assign_remaining(sorted(leftover), config.H.h)
    assignments.update(sweep)
    _apply_incidental(sweep, rest, survivors.history, "sweep")

    return _finish(
        "erdos-rankin",
        config,
        constants,
        partition.sizes(),
        assignments,
        survivors.history,
        rest,
        len(survivors.exceptional),
        census,
        None,
        None,
    )


def _run_maynard(
    config: RankinConfig, constants: GrowthConstants, zbound: int | None
) -> ConstructionRecord:
    _validate_tuple_for_run(config)
    if zbound is None:
        zbound = default_zbound(config.L)
    if not config.y < zbound <= config.L:
        raise OrderingViolated(f"need y={config.y} < zbound={zbound} <= L={config.L}")

    # fixed classes where they miss the tuple; conflicted primes defer to greedy
    assignments: dict[int, int] = {}
    deferred: list[int] = []
    history: list[TraceStep] = []
    fixed: dict[int, int] = {}
    stock_size = 0
    for p in _primes.primes_up_to(config.L):
        if p == config.q0:
            continue
        stock_size += 1
        if p > zbound:
            deferred.append(p)
            continue
        cls = 1 if p <= config.y else 0
        if any(h % p == cls for h in config.H.h):
            deferred.append(p)
            continue
        fixed[p] = cls

    alive = bytearray(b"\x01" * (config.U + 1))
    alive[0:2] = b"\x00\x00"
    count = config.U - 1
    for p in sorted(fixed):
        cls = fixed[p]
        removed = 0
        start = cls if cls >= 2 else cls + p
        for s in range(start, config.U + 1, p):
            if alive[s]:
                alive[s] = 0
                removed += 1
        count -= removed
        z = (-cls) % p
        assignments[p] = z
        history.append(TraceStep("fixed", p, z, removed, count))
    survivors = SurvivorSet(survivors={s for s in range(2, config.U + 1) if alive[s]})
    survivors.history = history
    post_fixed = len(survivors.survivors)

    # census the shapes against the unconflicted fixed map: that is the
    # classification the record reports, independent of tuple deferrals
    a_full = {
        p: (1 if p <= config.y else 0)
        for p in _primes.primes_up_to(zbound)
        if p != config.q0
    }
    maynard_census: dict[str, int] = {label: 0 for label in _MAYNARD_LABELS}
    maynard_census["unclassifiable"] = 0
    for s in _maynard_sieve(config.U, a_full):
        try:
            label, _ = _maynard_classify(s, config, zbound)
            maynard_census[label] += 1
        except UnclassifiableForm:
            maynard_census["unclassifiable"] += 1

    _, greedy_assign, skipped = greedy_stage(
        survivors, deferred, config.H.h, stop_threshold=_greedy_threshold(config.L)
    )
    assignments.update(greedy_assign)

    survivors.exceptional = frozenset(survivors.survivors)
    survivors.exceptional_rest = survivors.exceptional - config.h_set
    rest = set(survivors.exceptional_rest)

    sweep = assign_remaining(sorted(set(skipped)), config.H.h)
    assignments.update(sweep)
    _apply_incidental(sweep, rest, survivors.history, "sweep")

    return _finish(
        "maynard",
        config,
        constants,
        {"fixed": len(fixed), "deferred": len(deferred), "stock": stock_size},
        assignments,
        survivors.history,
        rest,
        len(survivors.exceptional),
        {"post-fixed": post_fixed},
        maynard_census,
        zbound,
    )
