import dataclasses
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optolink.errors import InvalidTopology, InvalidWorkload
from optolink.link import PhotonicParams
from optolink.ntt import butterfly_schedule
from optolink.sim import (
    SimConfig,
    Workload,
    WorkloadOverride,
    classify_bottleneck,
    raw_conflict_check,
    simulate,
    sweep,
)
from optolink.topology import OptoLinkTopology, build_reference_topology

from oracles import replay_stalls

REF = build_reference_topology(4, 128)

# back-derived from the published times and rates
COMPUTE_RATE = 40960 * 2e9  # ops/s
MEMORY_BW = 3e12  # B/s
BOTTLENECK = Workload(
    override=WorkloadOverride(
        bytes_in=4.2e9,
        bytes_out=2.1e9,
        compute_ops=0.18e-3 * COMPUTE_RATE,
        ops_rate=COMPUTE_RATE,
    )
)


def _pinned(**kw):
    base = dict(n=1024, coefficient_bitwidth=64, cores=4, butterflies_per_cycle=1, clock_hz=300e6)
    base.update(kw)
    return Workload(**base)


def test_bottleneck_scenario():
    r = simulate(REF, BOTTLENECK, overlap=False, memory_bandwidth=MEMORY_BW)
    assert r.compute_time == pytest.approx(0.18e-3, rel=0.01)
    assert r.transfer_time == pytest.approx(2.1e-3, rel=0.01)
    assert r.bottleneck == "transfer"
    assert r.stall_count == 0


def test_single_transform_total_is_sum_of_phases():
    for overlap in (True, False):
        r = simulate(REF, _pinned(num_transforms=1), overlap=overlap)
        assert r.total_time == pytest.approx(r.load_time + r.compute_time + r.store_time, rel=1e-12)


def test_infinite_bandwidth_is_compute_bound():
    fast = PhotonicParams(per_channel_rate=float("inf"))
    wl = _pinned(num_transforms=8)
    r = simulate(REF, wl, fast, overlap=False)
    compute = 5120 / (4 * 300e6)
    assert r.compute_time == pytest.approx(compute)
    # only the 10 ps flight time of each phase remains
    assert r.total_time == pytest.approx(8 * (compute + 20e-12))
    assert r.bottleneck == "compute"


def test_compute_time_from_butterflies():
    r = simulate(REF, _pinned(n=4096, cores=2, butterflies_per_cycle=2, clock_hz=1e9))
    assert r.butterflies == 2048 * 12
    assert r.compute_time == pytest.approx(2048 * 12 / 4e9)


def test_twiddle_modes():
    loads = {m: simulate(REF, _pinned(twiddle_mode=m, n=4096)).load_time for m in ("cached", "per_transform", "per_stage")}
    # input and twiddle travel on parallel waveguides, so one table costs nothing extra
    assert loads["cached"] == loads["per_transform"]
    assert loads["per_stage"] > loads["per_transform"]


def test_electrical_transfer_ratio_is_304():
    wl = _pinned(n=4096, num_transforms=4)
    opt = simulate(REF, wl)
    ele = simulate(REF, wl, link="electrical")
    assert ele.load_time / opt.load_time == pytest.approx(304, rel=1e-9)
    assert ele.store_time / opt.store_time == pytest.approx(304, rel=1e-9)
    assert ele.compute_time == opt.compute_time


def test_invalid_inputs():
    with pytest.raises(InvalidTopology):
        simulate(OptoLinkTopology(4, 128, ()), _pinned())
    with pytest.raises(InvalidWorkload):
        Workload(n=1000)
    with pytest.raises(InvalidWorkload):
        Workload(num_transforms=0)
    with pytest.raises(InvalidWorkload):
        Workload(twiddle_mode="sometimes")
    with pytest.raises(InvalidWorkload):
        WorkloadOverride(ops_rate=0)
    with pytest.raises(InvalidWorkload):
        simulate(REF, _pinned(), memory_bandwidth=0)
    with pytest.raises(ValueError):
        simulate(REF, _pinned(), link="copper")


def test_classify_bottleneck():
    assert classify_bottleneck(2.1, 0.18) == "transfer"
    assert classify_bottleneck(0.1, 1.0) == "compute"
    assert classify_bottleneck(1.0, 0.95) == "balanced"
    assert classify_bottleneck(0, 0) == "balanced"


def test_utilization_bounds():
    r = simulate(REF, _pinned(num_transforms=16))
    assert set(r.channel_utilization) == {1, 2, 3, 4, 5}
    assert all(0 <= u <= 1 for u in r.channel_utilization.values())


def test_determinism():
    wl = _pinned(n=2048, num_transforms=7, buffering_depth=16)
    assert simulate(REF, wl) == simulate(REF, wl)
    assert simulate(REF, wl).to_dict() == simulate(REF, wl).to_dict()


workloads = st.builds(
    WorkloadOverride,
    bytes_in=st.floats(0, 1e9),
    bytes_twiddle=st.floats(0, 1e9),
    bytes_out=st.floats(0, 1e9),
    compute_ops=st.floats(0, 1e12),
    ops_rate=st.floats(1e6, 1e14),
)


@settings(max_examples=80, deadline=None)
@given(o=workloads, k=st.integers(1, 64), cap=st.one_of(st.none(), st.floats(1e9, 1e13)))
def test_pipeline_bounds(o, k, cap):
    wl = Workload(num_transforms=k, override=o)
    lap = simulate(REF, wl, overlap=True, memory_bandwidth=cap)
    seq = simulate(REF, wl, overlap=False, memory_bandwidth=cap)
    phase_max = max(lap.load_time, lap.compute_time, lap.store_time)
    tol = 1e-12 * max(seq.total_time, 1e-30)
    assert k * phase_max - tol <= lap.total_time <= seq.total_time + tol


@settings(max_examples=80, deadline=None)
@given(
    o=workloads,
    field=st.sampled_from(["bytes_in", "bytes_twiddle", "bytes_out"]),
    extra=st.floats(1, 1e9),
    overlap=st.booleans(),
)
def test_more_bytes_never_faster(o, field, extra, overlap):
    more = dataclasses.replace(o, **{field: getattr(o, field) + extra})
    a = simulate(REF, Workload(num_transforms=3, override=o), overlap=overlap)
    b = simulate(REF, Workload(num_transforms=3, override=more), overlap=overlap)
    assert b.total_time >= a.total_time


@settings(max_examples=50, deadline=None)
@given(rate=st.floats(0.1, 100), factor=st.floats(1, 10), n=st.sampled_from([64, 1024, 8192]))
def test_more_bandwidth_never_slower(rate, factor, n):
    wl = _pinned(n=n, num_transforms=5)
    slow = simulate(REF, wl, PhotonicParams(per_channel_rate=rate))
    fast = simulate(REF, wl, PhotonicParams(per_channel_rate=rate * factor))
    assert fast.total_time <= slow.total_time


def test_raw_conflicts_against_replay():
    rng = random.Random(1)
    for n in (1, 2, 4, 8, 16, 32, 64, 256):
        sched = butterfly_schedule(n)
        for depth in sorted({1, 2, 3, max(1, n // 2), n, n + 5, rng.randint(1, 2 * n)}):
            for lat in (0, 1, 4, 9):
                assert raw_conflict_check(sched, depth, lat) == replay_stalls(sched, depth, lat), (n, depth, lat)


def test_raw_conflict_examples():
    assert raw_conflict_check(butterfly_schedule(1), 1) == 0
    for n in (2, 16, 1024):
        assert raw_conflict_check(butterfly_schedule(n), n) == 0
    assert raw_conflict_check(butterfly_schedule(4), 1, 4) == 4
    assert raw_conflict_check(butterfly_schedule(4), 2, 4) == 3
    with pytest.raises(ValueError):
        raw_conflict_check(butterfly_schedule(4), 0)


def test_stalls_non_increasing_in_depth():
    sched = butterfly_schedule(128)
    counts = [raw_conflict_check(sched, d, 4) for d in (1, 2, 4, 8, 16, 32, 64, 128)]
    assert counts == sorted(counts, reverse=True)
    assert counts[-1] == 0


def test_stalls_add_compute_time():
    # large transforms hide the write-to-read lag, tiny ones expose it
    base = simulate(REF, _pinned(n=4))
    tight = simulate(REF, _pinned(n=4, buffering_depth=1))
    assert tight.stall_count == 4
    assert tight.compute_time == pytest.approx(base.compute_time + tight.stall_count / 300e6)


def test_sweep_bitwidth_bandwidths():
    base = SimConfig(cores=1, workload=_pinned())
    results = sweep(base, "bitwidth", [32, 64, 128])
    assert [r.perf.aggregate_bandwidth / 1000 for r in results] == [0.4, 0.8, 1.6]


def test_sweep_cores_power():
    base = SimConfig(bitwidth=128, workload=_pinned())
    results = sweep(base, "cores", [4, 8, 16])
    for r, published in zip(results, (6.59, 13.16, 26.31)):
        assert r.perf.power["total"] == pytest.approx(published, rel=0.005)


def test_sweep_edge_cases():
    assert sweep(SimConfig(), "cores", []) == []
    with pytest.raises(ValueError):
        sweep(SimConfig(), "colour", [1])


def test_parallel_sweep_matches_serial():
    base = SimConfig(workload=_pinned(num_transforms=4))
    values = [64, 128, 256, 512, 1024, 2048, 4096]
    assert sweep(base, "n", values, max_workers=4) == sweep(base, "n", values)
