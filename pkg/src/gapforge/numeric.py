"""Iterated-log growth functions, normalizer specs, and schedule constants.

Conventions used throughout: log is the natural logarithm and log_k means
k-fold iteration, so log_2 x = log log x. Very large arguments are passed in
log form (ln_x=...) so nothing here ever needs to exponentiate past float
range.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

from gapforge.errors import (
    NegativeRegimeWarning,
    NonMonotone,
    Overflow,
    UndefinedIterate,
)
from gapforge import primes as _primes

# assign_remaining and k_for_m treat results beyond this as overflow
_INT_WIDTH_MAX = (1 << 63) - 1


def iter_log(x: float | None = None, nu: int = 1, *, ln_x: float | None = None) -> float:
    """nu-fold iterated natural log of x.

    Every iterate before the last must stay positive; only the final value may
    be <= 0. Callers with astronomically large x supply ln_x instead of x.
    """
    if nu < 1:
        raise ValueError("need nu >= 1")
    if (x is None) == (ln_x is None):
        raise ValueError("supply exactly one of x or ln_x")
    if ln_x is not None:
        value, remaining = float(ln_x), nu - 1
        if remaining == 0:
            return value
    else:
        if x <= 1:
            raise ValueError(f"need x > 1, got {x}")
        value, remaining = float(x), nu
    for level in range(remaining):
        if value <= 0:
            raise UndefinedIterate(
                f"iterate {nu - remaining + level} is {value} <= 0 before the final level"
            )
        value = math.log(value)
    return value


def rankin_g(x: float | None = None, *, ln_x: float | None = None) -> float:
    """The slow-growth gap normalizer g(x) = log_2(x) log_4(x) / log_3(x)^2.

    Defined when log_3 x > 0. Where log_4 x < 0 the value is negative and a
    NegativeRegimeWarning marks it as meaningless asymptotically.
    """
    l2 = iter_log(x, 2, ln_x=ln_x)
    if l2 <= 0:
        raise UndefinedIterate(f"log_2 x = {l2} <= 0")
    l3 = math.log(l2)
    if l3 <= 0:
        raise UndefinedIterate(f"log_3 x = {l3} <= 0")
    l4 = math.log(l3)
    if l4 < 0:
        warnings.warn(
            f"log_4 x = {l4} < 0: value is outside the asymptotic regime",
            NegativeRegimeWarning,
            stacklevel=2,
        )
    return l2 * l4 / (l3 * l3)


@dataclass(frozen=True)
class GrowthConstants:
    """Tunable scale constants for the construction schedule.

    c7 is calibrated so the cluster schedule hits 50 at m=2; the others are
    not pinned by any known value and default to 1.0. Reports flag whenever
    the defaults are in use.
    """

    c7: float = 50.0 * math.exp(-10.0)
    omega0: str | Callable[..., float] = "log2"
    c0: float = 1.0
    c9: float = 1.0
    c10: float = 1.0

    def __post_init__(self) -> None:
        for name in ("c7", "c0", "c9", "c10"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def omega0_value(self, x: float | None = None, *, ln_x: float | None = None) -> float:
        if self.omega0 == "log2":
            return iter_log(x, 2, ln_x=ln_x)
        if callable(self.omega0):
            return self.omega0(x if x is not None else math.exp(ln_x))
        raise ValueError(f"unknown omega0 tag {self.omega0!r}")

    def defaults_unpinned(self) -> bool:
        return (self.c0, self.c9, self.c10) == (1.0, 1.0, 1.0)


DEFAULT_CONSTANTS = GrowthConstants()


def rankin_g0(
    x: float | None = None,
    *,
    ln_x: float | None = None,
    constants: GrowthConstants = DEFAULT_CONSTANTS,
) -> float:
    """g0(x) = omega0(x) * g(x), the diverging normalizer."""
    return constants.omega0_value(x, ln_x=ln_x) * rankin_g(x, ln_x=ln_x)


def k_for_m(m: int, *, constants: GrowthConstants = DEFAULT_CONSTANTS) -> int:
    """Tuple size for m prime clusters: 50 at m=2, else ceil(c7 * e^(5m))."""
    if m < 2:
        raise ValueError("need m >= 2")
    if m == 2:
        return 50
    try:
        raw = constants.c7 * math.exp(5 * m)
    except OverflowError as exc:
        raise Overflow(f"e^(5*{m}) exceeds float range") from exc
    k = math.ceil(raw)
    if k > _INT_WIDTH_MAX:
        raise Overflow(f"k={k} exceeds the native integer width")
    return k


# ---------------------------------------------------------------------------
# normalizers


@dataclass(frozen=True)
class NormalizerSpec:
    """A named gap normalizer f with its slow-variation tolerance.

    eval maps an integer n >= n0 to a positive real. epsilon is the relative
    wobble allowed over [N, 2N] once N >= n0.
    """

    eval: Callable[[int], float]
    name: str
    epsilon: float = 0.05
    n0: int = 2


def log_normalizer(scale: float = 1.0, epsilon: float = 0.05) -> NormalizerSpec:
    name = "log" if scale == 1.0 else f"log*{scale:g}"
    return NormalizerSpec(lambda n: scale * math.log(n), name, epsilon, n0=2)


def g_log_normalizer(scale: float = 1.0, epsilon: float = 0.05) -> NormalizerSpec:
    """f(n) = scale * g(n) * log n; positive only past the iterated-log tower."""
    name = "g-log" if scale == 1.0 else f"g-log*{scale:g}"
    # smallest n with log_4 n > 0, so g(n) > 0
    n0 = math.ceil(math.exp(math.e**math.e)) + 1
    return NormalizerSpec(lambda n: scale * rankin_g(n) * math.log(n), name, epsilon, n0=n0)


def const_normalizer(value: float = 1.0, epsilon: float = 0.0) -> NormalizerSpec:
    if value <= 0:
        raise ValueError("const normalizer must be positive")
    name = "const" if value == 1.0 else f"const*{value:g}"
    return NormalizerSpec(lambda n: value, name, epsilon, n0=2)


def power_normalizer(exponent: float, scale: float = 1.0, epsilon: float = 0.05) -> NormalizerSpec:
    if exponent < 0 or scale <= 0:
        raise ValueError("need exponent >= 0 and scale > 0")
    return NormalizerSpec(lambda n: scale * n**exponent, f"pow{exponent:g}*{scale:g}", epsilon, n0=2)


class SlowVariationReport(NamedTuple):
    ok: bool
    deviation: float


def validate_slow_variation(
    f: NormalizerSpec,
    N: int,
    eps: float | None = None,
    *,
    grid: int = 1024,
) -> SlowVariationReport:
    """Check max |f(n)/f(N) - 1| over [N, 2N] on a log-spaced integer grid.

    The grid always contains both endpoints. Raises NonMonotone if the sampled
    values ever decrease.
    """
    if N < max(f.n0, 2):
        raise ValueError(f"need N >= {max(f.n0, 2)} for normalizer {f.name}")
    eps = f.epsilon if eps is None else eps
    points = sorted({N, 2 * N} | {round(N * 2 ** (i / grid)) for i in range(1, grid)})
    base = f.eval(N)
    if base <= 0:
        raise ValueError(f"{f.name}({N}) = {base} is not positive")
    deviation, last = 0.0, None
    for n in points:
        value = f.eval(n)
        if last is not None and value < last:
            raise NonMonotone(f"{f.name} decreases near n={n}")
        last = value
        deviation = max(deviation, abs(value / base - 1.0))
    return SlowVariationReport(deviation <= eps, deviation)


class MertensRatio(NamedTuple):
    exact: float
    surrogate: float


def mertens_ratio(v: int, y: int) -> MertensRatio:
    """prod(1 - 1/p) over primes v < p <= y, next to its log v / log y surrogate.

    The first field is the exact product over the sieved primes; the second is
    only the asymptotic stand-in, reported for comparison.
    """
    if not 2 <= v <= y:
        raise ValueError(f"need 2 <= v <= y, got v={v}, y={y}")
    exact = 1.0
    for p in _primes.iter_primes(v + 1, y + 1):
        exact *= 1.0 - 1.0 / p
    return MertensRatio(exact, math.log(v) / math.log(y))
