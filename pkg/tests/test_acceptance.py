"""Acceptance suite: one test per criterion, summarized at the end of the run.

Published figures are written out literally here rather than imported from
the package, so a drifting constant cannot silently pass.
"""

import csv
import json
import random
import time
import warnings
from pathlib import Path

import pytest

from optolink.cli import main
from optolink.ntt import (
    ButterflyCounter,
    intt_fast,
    make_context,
    ntt_direct,
    ntt_fast,
    poly_mul_naive,
    poly_mul_ntt,
)
from optolink.perf import (
    electrical_area,
    equivalent_electrical_bitwidth,
    optolink_area,
    optolink_bandwidth,
    optolink_power,
    serialization_latency,
)
from optolink.report import ntt_prime
from optolink.sim import Workload, WorkloadOverride, simulate
from optolink.topology import (
    WavelengthDensityWarning,
    build_reference_topology,
    validate_topology,
    wavelength_demand,
)

from oracles import cyclic_convolution, horner
from test_topology import _inject_duplicate

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"


def criterion(title):
    def mark(fn):
        fn.criterion = title
        return fn

    return mark


def _report(title, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'}  {title}: {detail}")


def _csv(path):
    lines = path.read_text().splitlines()[1:]
    return list(csv.DictReader(lines))


@criterion("AC1 bitrate table reproduction")
def test_ac1_bitrate_table(tmp_path):
    start = time.perf_counter()
    assert main(["--out", str(tmp_path), "--format", "csv", "tables"]) == 0
    elapsed = time.perf_counter() - start
    rows = {int(r["bitwidth"]): r for r in _csv(tmp_path / "table3_bitrate.csv")}
    published = {32: ("1.32GB/s", "0.4TB/s"), 64: ("2.63GB/s", "0.8TB/s"), 128: ("5.26GB/s", "1.6TB/s")}
    got = {b: (rows[b]["electrical_bitrate"], rows[b]["optolink_bandwidth"]) for b in published}
    latencies = {(r["electrical_latency"], r["optolink_latency"]) for r in rows.values()}
    ok = got == published and latencies == {("3.04ns", "10ps")} and elapsed < 1.0
    _report("AC1", ok, f"{got}, latencies {latencies}, {elapsed:.3f} s")
    assert got == published
    assert latencies == {("3.04ns", "10ps")}
    assert elapsed < 1.0


POWER = {
    (32, 4): (283.89, 1.65),
    (32, 8): (562.44, 3.29),
    (32, 16): (1121.9, 6.58),
    (64, 4): (308.18, 3.29),
    (64, 8): (619.29, 6.58),
    (64, 16): (1232.19, 13.16),
    (128, 4): (336.99, 6.59),
    (128, 8): (661.74, 13.16),
    (128, 16): (1332.31, 26.31),
}


@criterion("AC2 power table reproduction")
def test_ac2_power_table(tmp_path):
    start = time.perf_counter()
    assert main(["--out", str(tmp_path), "--format", "json", "tables"]) == 0
    elapsed = time.perf_counter() - start
    rows = json.loads((tmp_path / "table4_power.json").read_text())["payload"]
    by_key = {(r["bitwidth"], r["cores"]): r for r in rows}
    assert set(by_key) == set(POWER)
    worst = 0.0
    for key, (uw, watts) in POWER.items():
        assert by_key[key]["electrical_uW"] == uw
        model = optolink_power(*key)["total"]
        worst = max(worst, abs(model - watts) / watts)
        assert model == pytest.approx(watts, rel=0.005)
    _report("AC2", elapsed < 1.0, f"worst OptoLink error {worst:.4%}, electrical exact, {elapsed:.3f} s")
    assert elapsed < 1.0


@criterion("AC3 derived link claims")
def test_ac3_derived_claims():
    got = (
        serialization_latency(64, 10),
        equivalent_electrical_bitwidth(1.6),
        optolink_bandwidth(192),
        optolink_bandwidth(1024),
    )
    _report("AC3", got == (6.4, 4864, 2.4, 12.8), got)
    assert got == (6.4, 4864, 2.4, 12.8)


@criterion("AC4 area")
def test_ac4_area():
    electrical = tuple(electrical_area(c) for c in (4, 8, 16))
    per_channel = optolink_area(1)["total"]
    # TX + RX transceivers at 0.0096 mm^2 each, two rings at 0.01 mm^2
    expected = 0.0096 + 0.0096 + 2 * 0.01
    _report("AC4", electrical == (3097.3, 5741.2, 11861.9), f"{electrical} um^2, {per_channel:.4f} mm^2/channel")
    assert electrical == (3097.3, 5741.2, 11861.9)
    assert per_channel == pytest.approx(expected, abs=1e-12)
    assert round(per_channel, 4) == 0.0392


@criterion("AC5 memory bottleneck scenario")
def test_ac5_bottleneck():
    rate = 40960 * 2e9
    wl = Workload(
        n=1024,
        cores=4,
        butterflies_per_cycle=1,
        clock_hz=300e6,
        override=WorkloadOverride(bytes_in=4.2e9, bytes_out=2.1e9, compute_ops=0.18e-3 * rate, ops_rate=rate),
    )
    assert 2.1e-3 * 3e12 == pytest.approx(4.2e9 + 2.1e9)
    r = simulate(build_reference_topology(4, 128), wl, overlap=False, memory_bandwidth=3e12)
    ok = (
        abs(r.compute_time - 0.18e-3) <= 0.01 * 0.18e-3
        and abs(r.transfer_time - 2.1e-3) <= 0.01 * 2.1e-3
        and r.bottleneck == "transfer"
    )
    _report("AC5", ok, f"compute {r.compute_time * 1e3:.4g} ms, transfer {r.transfer_time * 1e3:.4g} ms, {r.bottleneck}")
    assert r.compute_time == pytest.approx(0.18e-3, rel=0.01)
    assert r.transfer_time == pytest.approx(2.1e-3, rel=0.01)
    assert r.bottleneck == "transfer"


def _exhaustive_small():
    """Every input vector for n = 1, 2, 4 and every scaled basis vector for n = 8."""
    cases = 0
    for n in (1, 2, 4):
        ctx = make_context(17, n)
        for i in range(17**n):
            a = [(i // 17**j) % 17 for j in range(n)]
            assert ntt_fast(ctx, a) == ntt_direct(ctx, a)
            cases += 1
    ctx = make_context(17, 8)
    for j in range(8):
        for c in range(17):
            a = [0] * 8
            a[j] = c
            assert ntt_fast(ctx, a) == ntt_direct(ctx, a)
            cases += 1
    # linearity check backing the basis argument at n = 8
    rng = random.Random(8)
    for _ in range(2000):
        a, b = ctx.random_poly(rng), ctx.random_poly(rng)
        s = [(x + y) % 17 for x, y in zip(a, b)]
        assert ntt_fast(ctx, s) == [(x + y) % 17 for x, y in zip(ntt_fast(ctx, a), ntt_fast(ctx, b))]
        assert ntt_fast(ctx, a) == ntt_direct(ctx, a)
        cases += 1
    return cases


def _randomized_up_to_2_14(rng):
    """Fast transform against evaluation at powers of omega, n = 2 .. 2**14."""
    q = ntt_prime(1 << 14)
    cases = 0
    n = 2
    while n <= 1 << 14:
        ctx = make_context(q, n)
        full = n <= 256
        for _ in range(110 if full else 30):
            a = ctx.random_poly(rng)
            fast = ntt_fast(ctx, a)
            idx = range(n) if full else rng.sample(range(n), 24)
            assert [fast[i] for i in idx] == [horner(a, pow(ctx.omega, i, q), q) for i in idx]
            assert intt_fast(ctx, fast) == a
            cases += 1
        n *= 2
    return cases


def _poly_mul_up_to_1024(rng):
    cases = 0
    for n in (2, 4, 8, 16, 32, 64, 128, 256, 512, 1024):
        ctx = make_context(12289, n)
        for _ in range(20 if n <= 128 else 3):
            a, b = ctx.random_poly(rng), ctx.random_poly(rng)
            prod = poly_mul_ntt(ctx, a, b)
            assert prod == poly_mul_naive(ctx, a, b)
            if n <= 256:
                assert prod == cyclic_convolution(a, b, 12289)
            cases += 1
    return cases


def _butterfly_counts():
    q = ntt_prime(1 << 14)
    n = 1
    while n <= 1 << 14:
        counter = ButterflyCounter()
        ntt_fast(make_context(q, n), [0] * n, counter)
        log_n = n.bit_length() - 1
        assert counter.butterflies == (n // 2) * log_n
        n *= 2


@criterion("AC6 NTT property suite")
def test_ac6_ntt_properties():
    start = time.perf_counter()
    rng = random.Random(2024)
    exhaustive = _exhaustive_small()
    randomized = _randomized_up_to_2_14(rng)
    products = _poly_mul_up_to_1024(rng)
    _butterfly_counts()
    elapsed = time.perf_counter() - start
    ok = randomized >= 1000 and elapsed < 60
    _report(
        "AC6",
        ok,
        f"{exhaustive} small cases, {randomized} randomized cases to n=16384, {products} products, {elapsed:.1f} s",
    )
    assert randomized >= 1000
    assert elapsed < 60


@criterion("AC7 reference topology")
def test_ac7_topology():
    t = build_reference_topology(4)
    demand = wavelength_demand(t)
    assert len(t.waveguides) == 5
    assert demand.distinct_wavelengths == 24
    assert validate_topology(t).ok
    rejected = validate_topology(_inject_duplicate(t))
    assert not rejected.ok and any("duplicate wavelength" in v for v in rejected.violations)
    dense = build_reference_topology(33)  # 66 wavelengths on each data waveguide
    with pytest.warns(WavelengthDensityWarning):
        assert wavelength_demand(dense).exceeds_density_limit
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        wavelength_demand(build_reference_topology(32))
    _report("AC7", True, "5 waveguides, 24 wavelengths, duplicate rejected, density warning raised")


@criterion("AC8 accelerator comparison")
def test_ac8_compare(tmp_path):
    assert main(["--out", str(tmp_path), "--format", "json", "compare", "--channels", "128"]) == 0
    rows = json.loads((tmp_path / "compare.json").read_text())["payload"]
    met = {(r["name"], r["required_GBps"]) for r in rows if r["meets"]}
    required = {
        ("100x", 900.0),
        ("cryptGPU", 1.25),
        ("TensorFHE", 2400.0),
        ("HEAX", 34.0),
        ("HEAX", 64.0),
        ("Poseidon", 460.0),
        ("FAB", 460.0),
        ("F1", 1000.0),
        ("CraterLake", 2400.0),
        ("BTS", 1000.0),
        ("ARK", 1000.0),
    }
    assert {(r["name"], r["required_GBps"]) for r in rows} == required
    expected = {row for row in required if row[1] <= 1600.0}
    _report("AC8", met == expected, f"short: {sorted(required - met)}")
    assert met == expected


def _stripped(path):
    if path.suffix == ".csv":
        return path.read_text().split("\n", 1)[1]
    doc = json.loads(path.read_text())
    doc.pop("generated")
    return json.dumps(doc, sort_keys=True)


@criterion("AC9 determinism")
def test_ac9_determinism(tmp_path):
    commands = [
        ["tables"],
        ["compare", "--channels", "128"],
        ["simulate", "-f", str(SCENARIOS / "memory_bottleneck.json")],
        ["simulate", "-f", str(SCENARIOS / "ntt_batch.json")],
        ["sweep", "-f", str(SCENARIOS / "ntt_batch.json"), "--jobs", "4"],
        ["ntt-selftest", "--max-n", "2048"],
    ]
    compared = 0
    for i, argv in enumerate(commands):
        a, b = tmp_path / f"{i}a", tmp_path / f"{i}b"
        assert main(["--out", str(a)] + argv) == 0
        assert main(["--out", str(b)] + argv) == 0
        for path in sorted(a.iterdir()):
            assert _stripped(path) == _stripped(b / path.name), path.name
            compared += 1
    _report("AC9", True, f"{compared} report files byte-identical across runs")
