"""gapforge: prime gap exploration toolkit.

Segmented sieving and gap records, covering-congruence constructions over a
bounded prime stock, admissible tuple machinery, smooth-number counting, and
an empirical explorer for normalized gaps and prime clusters.
"""

from gapforge.errors import (
    BudgetExceeded,
    FactorBudgetExceeded,
    GapforgeError,
    HViolation,
    IoFailure,
    NegativeRegimeWarning,
    NoAllowedClass,
    NonMonotone,
    NoPlacement,
    OrderingViolated,
    Overflow,
    RangeTooLarge,
    ResourceExhausted,
    UnclassifiableForm,
    UndefinedIterate,
    ValidationFailure,
)
from gapforge.numeric import (
    DEFAULT_CONSTANTS,
    GrowthConstants,
    NormalizerSpec,
    const_normalizer,
    g_log_normalizer,
    iter_log,
    k_for_m,
    log_normalizer,
    mertens_ratio,
    power_normalizer,
    rankin_g,
    rankin_g0,
    validate_slow_variation,
)
from gapforge.primes import (
    GapSample,
    SieveSegment,
    factorize,
    gaps_in,
    is_prime,
    iter_primes,
    max_gap_records,
    prime_count,
    primes_up_to,
    sieve_range,
)
from gapforge.smooth import SmoothCount, count_smooth, dickman_rho, psi_bound, psi_exact
from gapforge.tuples import (
    AdmissibleTuple,
    PlacementConstraint,
    delta,
    equal_spaced_targets,
    is_admissible,
    place_prime_tuple,
    radical,
)
from gapforge.rankin import (
    ConstructionRecord,
    PrimePartition,
    RankinConfig,
    ResidueSystem,
    SurvivorClass,
    SurvivorSet,
    assemble_crt,
    assign_remaining,
    classify_survivor,
    cleanup_stage,
    derive_params,
    greedy_stage,
    maynard_residues,
    partition_primes,
    run_construction,
    stage_zero,
    verify_construction,
)
from gapforge.explorer import (
    ClusterScanResult,
    LimitSetEstimate,
    cluster_scan,
    consecutive_gap_cluster,
    emit_report,
    empirical_limit_set,
    explore_report,
    normalized_gaps,
    render_report,
)

__version__ = "0.1.0"
