"""Covering-system construction: parameter schedule, prime partition,
sieving stages, CRT assembly, verification, and both end-to-end strategies."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapforge import rankin, tuples
from gapforge.errors import (
    HViolation,
    NoAllowedClass,
    OrderingViolated,
    UnclassifiableForm,
)
from oracles import best_greedy_class, crt_by_search, naive_primes


def desk_config(**kw):
    base = dict(L=20, v=3, y=7, U=50)
    base.update(kw)
    return rankin.RankinConfig(**base)


def offsets(*h):
    return tuples.AdmissibleTuple.from_offsets(list(h))


# --- config and schedule -----------------------------------------------------


def test_config_ordering_enforced():
    with pytest.raises(OrderingViolated):
        rankin.RankinConfig(L=20, v=9, y=7, U=50)  # v >= y
    with pytest.raises(OrderingViolated):
        rankin.RankinConfig(L=20, v=3, y=11, U=50)  # y > L/2
    with pytest.raises(OrderingViolated):
        rankin.RankinConfig(L=20, v=3, y=7, U=19)  # U < L
    with pytest.raises(OrderingViolated):
        rankin.RankinConfig(L=20, v=1, y=7, U=50)  # v < 2


def test_config_rejects_bad_q0():
    with pytest.raises(ValueError):
        desk_config(q0=9)  # not prime
    with pytest.raises(ValueError):
        desk_config(q0=11, H=offsets(11, 13))  # q0 inside the tuple


def test_config_rejects_inadmissible_h():
    with pytest.raises(ValueError):
        desk_config(H=offsets(0, 2, 4))


def test_schedule_thresholds_v_formula():
    v, _ = rankin.schedule_thresholds(math.exp(10), 0)
    assert v == 1000


def test_derive_params_desk_scale_fails_with_named_inequalities():
    with pytest.raises(OrderingViolated) as exc:
        rankin.derive_params(100, 5)
    msg = str(exc.value)
    assert "v=97" in msg and "y=1" in msg


def test_derive_params_rejects_tiny_l():
    with pytest.raises(ValueError):
        rankin.derive_params(15, 0)


def test_explicit_overrides_build_valid_config():
    cfg = rankin.RankinConfig(L=100, v=7, y=13, U=150)
    assert cfg.v < cfg.y <= cfg.L / 2 < cfg.L <= cfg.U


# --- partition ---------------------------------------------------------------


def test_partition_desk_example():
    part = rankin.partition_primes(desk_config())
    assert part.p1 == (2, 3)
    assert part.p2 == (5, 7)
    assert part.p3 == ()
    assert part.p4 == (11, 13, 17, 19)
    assert part.excluded == ()
    assert part.sizes() == {"p1": 2, "p2": 2, "p3": 0, "p4": 4}


def test_partition_excludes_q0():
    part = rankin.partition_primes(desk_config(q0=13))
    assert part.p4 == (11, 17, 19)
    assert 13 in part.excluded


def test_partition_excludes_prime_tuple_members():
    part = rankin.partition_primes(desk_config(H=offsets(5)))
    assert part.p2 == (7,)
    assert 5 in part.excluded


def test_partition_stock_disjoint_and_complete():
    cfg = rankin.RankinConfig(L=100, v=7, y=13, U=150, q0=41, H=offsets(11, 17))
    part = rankin.partition_primes(cfg)
    stock = part.stock()
    assert len(set(stock)) == len(stock)
    expect = [p for p in naive_primes(100) if p not in (11, 17, 41)]
    assert sorted(stock) == expect
    for p in part.p1:
        assert p <= cfg.v
    for p in part.p2:
        assert cfg.v < p <= cfg.y
    for p in part.p3:
        assert cfg.y < p and 2 * p <= cfg.L
    for p in part.p4:
        assert 2 * p > cfg.L and p <= cfg.L


# --- stage zero --------------------------------------------------------------


def test_stage_zero_desk_example():
    cfg = desk_config()
    assigned, surv = rankin.stage_zero(cfg, rankin.partition_primes(cfg))
    assert assigned == {2: 0, 3: 0}
    assert sorted(surv.survivors) == [
        5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47, 49,
    ]
    assert [(t.stage, t.p, t.z_p, t.removed, t.remaining) for t in surv.history] == [
        ("zero", 2, 0, 25, 24),
        ("zero", 3, 0, 8, 16),
    ]


def test_stage_zero_trace_counts_telescope():
    cfg = rankin.RankinConfig(L=100, v=7, y=13, U=300)
    _, surv = rankin.stage_zero(cfg, rankin.partition_primes(cfg))
    prev = 299  # |(1, 300]| before any prime acts
    for step in surv.history:
        assert step.remaining == prev - step.removed
        prev = step.remaining
    assert len(surv.survivors) == prev


# --- greedy ------------------------------------------------------------------


def test_greedy_desk_example():
    cfg = desk_config()
    part = rankin.partition_primes(cfg)
    _, surv = rankin.stage_zero(cfg, part)
    after, assigned, skipped = rankin.greedy_stage(surv, part.p2, ())
    assert assigned == {5: 3, 7: 0}
    assert skipped == []
    assert [(t.p, t.z_p, t.removed) for t in after.history[-2:]] == [(5, 3, 4), (7, 0, 2)]


def test_greedy_respects_tuple_classes():
    cfg = desk_config()
    part = rankin.partition_primes(cfg)
    _, surv = rankin.stage_zero(cfg, part)
    _, assigned, _ = rankin.greedy_stage(surv, (5,), (2,))
    # z = 3 would kill the most but collides with h = 2 mod 5
    assert assigned == {5: 0}


def test_greedy_no_allowed_class():
    surv = rankin.SurvivorSet(survivors={3, 5, 7}, history=[], exceptional=set(), exceptional_rest=set())
    with pytest.raises(NoAllowedClass):
        rankin.greedy_stage(surv, (2,), (0, 1))


@given(
    seed=st.integers(min_value=0, max_value=10**9),
    p=st.sampled_from([3, 5, 7, 11, 13]),
    h=st.lists(st.integers(min_value=0, max_value=30), max_size=2, unique=True),
)
@settings(max_examples=120)
def test_greedy_matches_exhaustive_census(seed, p, h):
    h = tuple(sorted(h))
    forbidden = {(-t) % p for t in h}
    if len(forbidden) >= p:
        return
    values = {(seed * (i + 1) ** 2 + 7 * i) % 1000 + 2 for i in range(40)}
    surv = rankin.SurvivorSet(survivors=set(values), history=[], exceptional=set(), exceptional_rest=set())
    after, assigned, skipped = rankin.greedy_stage(surv, (p,), h)
    want_z, want_count = best_greedy_class(values, p, h)
    if skipped:
        assert want_count == 0
    else:
        assert assigned[p] == want_z
        assert len(values) - len(after.survivors) == want_count


# --- cleanup and leftovers ---------------------------------------------------


def test_cleanup_desk_example():
    surv = rankin.SurvivorSet(survivors={19, 41}, history=[], exceptional=set(), exceptional_rest=set())
    assigned, unused, uncovered = rankin.cleanup_stage(surv, (11, 13, 17, 19), ())
    # 11 kills both: 19 = -3, 41 = +8 -> no; z=3: 19+3=22, 41+3=44, both multiples
    assert assigned == {11: 3}
    assert unused == [13, 17, 19]
    assert uncovered == ()


def test_cleanup_skips_tuple_conflicts():
    surv = rankin.SurvivorSet(survivors={13}, history=[], exceptional=set(), exceptional_rest=set())
    # killing 13 needs z = 9 mod 11, and h = 2 bars exactly that class
    assigned, unused, uncovered = rankin.cleanup_stage(surv, (11,), (2,))
    assert assigned == {}
    assert unused == [11]
    assert uncovered == (13,)


def test_assign_remaining():
    assert rankin.assign_remaining([7], (0, 2)) == {7: 1}
    assert rankin.assign_remaining([7], ()) == {7: 0}
    with pytest.raises(AssertionError):
        rankin.assign_remaining([3], (0, 1, 2))


# --- CRT and verification ----------------------------------------------------


def test_assemble_crt_examples():
    assert rankin.assemble_crt({2: 0, 3: 0, 5: 3, 7: 0}) == (168, 210)
    assert rankin.assemble_crt({5: 3}) == (3, 5)
    assert rankin.assemble_crt({2: 1, 3: 2}) == (5, 6)
    assert rankin.assemble_crt({}) == (0, 1)


@given(
    moduli=st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]), min_size=1, max_size=4, unique=True),
    seed=st.integers(min_value=0, max_value=10**6),
)
@settings(max_examples=100)
def test_assemble_crt_matches_search(moduli, seed):
    assignments = {p: (seed // p) % p for p in moduli}
    z, W = rankin.assemble_crt(assignments)
    assert (z, W) == crt_by_search(assignments)
    assert 0 <= z < W


def test_crt_scales_to_big_products():
    ps = naive_primes(600)
    assignments = {p: p // 2 for p in ps}
    z, W = rankin.assemble_crt(assignments)
    assert W == math.prod(ps)
    for p in ps:
        assert z % p == p // 2


def test_verify_construction_desk():
    res = rankin.verify_construction(168, 210, 50, ())
    assert res.covered_prefix == 4
    assert res.violations[:3] == (5, 11, 13)


def test_verify_construction_trivial_range():
    assert rankin.verify_construction(0, 6, 1, ()) == (1, ())


def test_residue_system_build_rejects_tuple_violation():
    with pytest.raises(HViolation):
        rankin.ResidueSystem.build({2: 0}, h=(2,))


def test_residue_system_build_desk():
    sysm = rankin.ResidueSystem.build({2: 0, 3: 0, 5: 3, 7: 0}, h=())
    assert (sysm.z, sysm.W) == (168, 210)
    assert sysm.assignments[5] == 3


# --- survivor classification --------------------------------------------------


def test_classify_desk_examples():
    cfg = rankin.RankinConfig(L=20, v=3, y=7, U=50, q0=23, H=offsets(11, 13))
    assert rankin.classify_survivor(17, cfg) is rankin.SurvivorClass.TYPE_A
    assert rankin.classify_survivor(143, cfg) is rankin.SurvivorClass.TYPE_B
    assert rankin.classify_survivor(6, cfg) is rankin.SurvivorClass.SIEVED


def test_classify_sieved_takes_precedence():
    cfg = desk_config()
    assert rankin.classify_survivor(10, cfg) is rankin.SurvivorClass.SIEVED


def test_classify_unclassifiable():
    with pytest.raises(UnclassifiableForm):
        rankin.classify_survivor(55, rankin.RankinConfig(L=20, v=3, y=7, U=100))
    with pytest.raises(UnclassifiableForm):
        rankin.classify_survivor(143, rankin.RankinConfig(L=20, v=3, y=7, U=150))


# --- end-to-end: erdos-rankin --------------------------------------------------


def test_run_desk_pipeline():
    rec = rankin.run_construction(desk_config())
    assert rec.strategy == "erdos-rankin"
    assert rec.claimed_coverage == 22
    assert rec.covered_prefix == 22
    assert rec.violations == (23, 25, 29, 43)
    assert rec.uncovered == (23, 25, 29, 43)
    assert rec.survivor_census == {"type-a": 11, "type-b": 5, "sieved": 0, "mixed": 0}
    assert [(t.stage, t.p, t.z_p, t.removed, t.remaining) for t in rec.history] == [
        ("zero", 2, 0, 25, 24),
        ("zero", 3, 0, 8, 16),
        ("greedy", 5, 3, 4, 12),
        ("greedy", 7, 0, 2, 10),
        ("cleanup", 11, 3, 2, 8),
        ("cleanup", 13, 8, 2, 6),
        ("cleanup", 17, 4, 1, 5),
        ("cleanup", 19, 8, 1, 4),
    ]
    assert rec.W == math.prod(naive_primes(20))
    assert rec.z == 5137608


def test_run_desk_pipeline_with_offset():
    rec = rankin.run_construction(desk_config(H=offsets(5)))
    assert rec.claimed_coverage == 22
    assert rec.uncovered == (23, 25, 31, 43)
    assert math.gcd(rec.z + 5, rec.W) == 1


def test_claim_matches_direct_gcd_scan():
    for cfg in (desk_config(), desk_config(H=offsets(5)), desk_config(q0=13)):
        rec = rankin.run_construction(cfg)
        # the covering target is (1, U], so the prefix scan starts at n = 2
        for n in range(2, rec.claimed_coverage + 1):
            assert math.gcd(rec.z + n, rec.W) > 1 or n in cfg.h_set
        for h in cfg.h_set:
            assert math.gcd(rec.z + h, rec.W) == 1


def test_w_composition_erdos_rankin():
    cfg = desk_config(q0=13, H=offsets(5))
    rec = rankin.run_construction(cfg)
    fac = rec.system.assignments
    # q0 never enters W; excluded tuple primes re-enter through the leftover sweep
    assert 13 not in fac
    assert 5 in fac
    assert rec.W % 13 != 0
    for p in naive_primes(20):
        if p != 13:
            assert rec.W % p == 0


def test_rejects_q0_dividing_tuple_radical():
    with pytest.raises(ValueError):
        rankin.run_construction(desk_config(q0=3, H=offsets(2, 5)))  # 3 | (5 - 2)


def test_tuple_offsets_must_be_sievable():
    with pytest.raises(ValueError):
        rankin.run_construction(desk_config(H=offsets(1)))


# --- end-to-end: maynard -------------------------------------------------------


def test_maynard_residue_plan():
    cfg = rankin.RankinConfig(L=30, v=3, y=7, U=75)
    ma = rankin.maynard_residues(cfg)
    assert ma.zbound == rankin.default_zbound(30) == 24
    assert ma.a == {2: 1, 3: 1, 5: 1, 7: 1, 11: 0, 13: 0, 17: 0, 19: 0, 23: 0}
    # z_p = -a_p mod p
    assert ma.residues == {2: 1, 3: 2, 5: 4, 7: 6, 11: 0, 13: 0, 17: 0, 19: 0, 23: 0}
    assert len(ma.survivors) == 15
    assert ma.classes[62] == "R"
    assert ma.classes[2] == "R-prime"
    assert ma.fibers == {2: (62, 74)}
    assert ma.fibers_tilde == {}


def test_maynard_fibers_partition_their_classes():
    cfg = rankin.RankinConfig(L=40, v=3, y=9, U=120)
    ma = rankin.maynard_residues(cfg)
    seen = set()
    for m, members in ma.fibers.items():
        for s in members:
            assert s not in seen  # fibers with different smooth parts are disjoint
            seen.add(s)
            assert ma.classes[s] == "R"
            big = s // m
            assert s == m * big
            assert ma.zbound < big <= cfg.L
    assert seen == {s for s, label in ma.classes.items() if label == "R"}
    for label in ma.classes.values():
        assert label in ("R", "R-tilde", "R-prime", "R-tilde-prime")


def test_maynard_zbound_bounds():
    cfg = rankin.RankinConfig(L=30, v=3, y=7, U=75)
    with pytest.raises(OrderingViolated):
        rankin.maynard_residues(cfg, zbound=7)
    with pytest.raises(OrderingViolated):
        rankin.maynard_residues(cfg, zbound=31)


def test_run_maynard_desk():
    cfg = rankin.RankinConfig(L=30, v=3, y=7, U=75)
    rec = rankin.run_construction(cfg, strategy="maynard")
    assert rec.strategy == "maynard"
    # desk-scale fixed assignment covers almost nothing; the claim is honest
    assert rec.claimed_coverage == 1
    assert rec.covered_prefix == 1
    assert rec.survivor_census == {"post-fixed": 15}
    assert rec.maynard_census == {
        "R": 2, "R-tilde": 0, "R-prime": 13, "R-tilde-prime": 0, "unclassifiable": 0,
    }
    # maynard W carries every prime <= L (no q0 here)
    assert rec.W == math.prod(naive_primes(30))
    assert {t.stage for t in rec.history} <= {"fixed", "greedy", "cleanup"}


def test_run_maynard_excludes_q0():
    cfg = rankin.RankinConfig(L=30, v=3, y=7, U=75, q0=29)
    rec = rankin.run_construction(cfg, strategy="maynard")
    assert rec.W % 29 != 0
    assert rec.W == math.prod(p for p in naive_primes(30) if p != 29)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        rankin.run_construction(desk_config(), strategy="frequentist")


# --- record serialization ------------------------------------------------------


def test_record_json_round_trip_fields():
    rec = rankin.run_construction(desk_config())
    d = rec.to_json_dict()
    assert d["z"] == "5137608"
    assert d["W"] == str(math.prod(naive_primes(20)))
    assert d["claimed_coverage"] == 22
    assert d["strategy"] == "erdos-rankin"
    assert len(d["history"]) == 8
    assert d["params"]["L"] == 20


def test_record_csv_trace():
    rec = rankin.run_construction(desk_config())
    assert rec.csv_header() == ["stage", "p", "z_p", "removed", "remaining"]
    rows = list(rec.csv_rows())
    assert rows[0] == ["zero", 2, 0, 25, 24]
    assert len(rows) == 8


# --- randomized claim/verify agreement -----------------------------------------


@given(seed=st.integers(min_value=0, max_value=10**9))
@settings(max_examples=15, deadline=None)
def test_random_configs_claim_equals_verify(seed):
    rng_l = 20 + (seed % 9) * 10
    v = 3 + (seed // 7) % 3
    y = v + 2 + (seed // 11) % 4
    if y > rng_l // 2:
        y = rng_l // 2
    if v >= y:
        v = y - 1
    if v < 2:
        return
    u = rng_l + (seed // 13) % (2 * rng_l)
    cfg = rankin.RankinConfig(L=rng_l, v=v, y=y, U=u)
    for strategy in ("erdos-rankin", "maynard"):
        rec = rankin.run_construction(cfg, strategy=strategy)
        res = rankin.verify_construction(rec.z, rec.W, cfg.U, ())
        assert rec.claimed_coverage == res.covered_prefix
        assert rec.violations == res.violations
