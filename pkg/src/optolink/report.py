"""Report builders behind the command-line tools.

Each builder returns plain rows (lists of dicts) plus, where relevant, the
list of regression checks against published values, so the CLI only has to
serialize them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import published as pc
from .link import PhotonicParams
from .ntt import (
    ButterflyCounter,
    butterfly_count,
    corrupt_twiddles,
    intt_fast,
    is_prime,
    make_context,
    ntt_direct,
    ntt_direct_at,
    ntt_fast,
    poly_mul_naive,
    poly_mul_ntt,
)
from .perf import (
    DEFAULT_BASELINE,
    ElectricalBaseline,
    electrical_bitrate,
    equivalent_electrical_bitwidth,
    optolink_area,
    optolink_bandwidth,
    optolink_power,
    propagation_latency,
    serialization_latency,
)

POWER_TOLERANCE = 0.005


def sig(x: float, digits: int = 3) -> float:
    """Round to ``digits`` significant figures."""
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits}g}")


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    actual: float
    rule: str  # "3sf", "exact" or "rel:<tol>"

    @property
    def passed(self) -> bool:
        if self.rule == "3sf":
            return sig(self.actual) == sig(self.expected)
        if self.rule == "exact":
            return self.actual == self.expected
        tol = float(self.rule.split(":", 1)[1])
        return abs(self.actual - self.expected) <= tol * abs(self.expected)

    def row(self) -> dict:
        return {
            "check": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "rule": self.rule,
            "passed": self.passed,
        }


def _fmt(x: float) -> str:
    return f"{sig(x):g}"


def table3(params: PhotonicParams = PhotonicParams(), baseline: ElectricalBaseline = DEFAULT_BASELINE):
    """Bitrate comparison rows and their checks."""
    prop_ps = propagation_latency(pc.REFERENCE_WAVEGUIDE_UM)
    rows, checks = [], []
    for bits, (el_pub, opt_pub) in sorted(pc.BITRATE_TABLE.items()):
        el = electrical_bitrate(bits, baseline.latency)
        opt = optolink_bandwidth(bits, params.per_channel_rate)
        rows.append(
            {
                "bitwidth": bits,
                "electrical_latency": f"{_fmt(baseline.latency)}ns",
                "electrical_bitrate": f"{_fmt(el)}GB/s",
                "optolink_latency": f"{_fmt(prop_ps)}ps",
                "optolink_bandwidth": f"{_fmt(opt)}TB/s",
            }
        )
        checks += [
            Check(f"electrical_bitrate_{bits}", el_pub, el, "3sf"),
            Check(f"optolink_bandwidth_{bits}", opt_pub, opt, "3sf"),
        ]
    checks += [
        Check("electrical_latency_ns", pc.ELECTRICAL_LATENCY_NS, baseline.latency, "3sf"),
        Check("optolink_latency_ps", 10.0, prop_ps, "3sf"),
        Check("electrical_bitrate_1024", pc.ELECTRICAL_1024BIT_GBYTES, electrical_bitrate(1024, baseline.latency), "3sf"),
        Check(
            "serialization_64bit_ns",
            pc.PRBS_SEQUENCE_NS,
            serialization_latency(pc.PRBS_SEQUENCE_BITS, params.per_wavelength_rate),
            "exact",
        ),
        Check(
            "equivalent_electrical_bitwidth_1.6TBps",
            pc.EQUIVALENT_ELECTRICAL_BITWIDTH_1P6TB,
            equivalent_electrical_bitwidth(1.6, baseline.latency),
            "exact",
        ),
    ]
    for ch, tbps in sorted(pc.SCALED_BANDWIDTHS_TBPS.items()):
        checks.append(Check(f"optolink_bandwidth_{ch}ch", tbps, optolink_bandwidth(ch, params.per_channel_rate), "exact"))
    return rows, checks


def table4(params: PhotonicParams = PhotonicParams(), baseline: ElectricalBaseline = DEFAULT_BASELINE):
    """Power comparison rows and their checks."""
    rows, checks = [], []
    for (bits, cores), (uw_pub, w_pub) in sorted(pc.POWER_TABLE.items()):
        uw = baseline.power(bits, cores)
        breakdown = optolink_power(bits, cores, params)
        w = breakdown["total"]
        rows.append(
            {
                "bitwidth": bits,
                "cores": cores,
                "channels": breakdown["channels"],
                "electrical_uW": round(uw, 2),
                "optolink_W": round(w, 4),
                "published_optolink_W": w_pub,
                "rel_error": round((w - w_pub) / w_pub, 5),
                "laser_W": round(breakdown["laser"], 4),
                "tx_W": round(breakdown["tx"], 4),
                "rx_W": round(breakdown["rx"], 4),
            }
        )
        checks += [
            Check(f"electrical_power_{bits}b_{cores}c", uw_pub, uw, "exact"),
            Check(f"optolink_power_{bits}b_{cores}c", w_pub, w, f"rel:{POWER_TOLERANCE}"),
        ]
    return rows, checks


def area_table(baseline: ElectricalBaseline = DEFAULT_BASELINE):
    rows, checks = [], []
    for cores, um2_pub in sorted(pc.ELECTRICAL_AREA_UM2.items()):
        um2 = baseline.area(cores)
        channels = 128 * cores
        opt = optolink_area(channels)
        rows.append(
            {
                "cores": cores,
                "bitwidth": 128,
                "electrical_um2": um2,
                "optolink_channels": channels,
                "optolink_tx_mm2": round(opt["tx"], 4),
                "optolink_rx_mm2": round(opt["rx"], 4),
                "optolink_mrr_mm2": round(opt["mrr"], 4),
                "optolink_total_mm2": round(opt["total"], 4),
            }
        )
        checks.append(Check(f"electrical_area_{cores}c", um2_pub, um2, "exact"))
    per_channel = (
        2 * pc.TRANSCEIVER_AREA_MM2_PER_WAVELENGTH + pc.MRRS_PER_CHANNEL * pc.MRR_AREA_MM2
    )
    checks.append(Check("optolink_area_per_channel_mm2", per_channel, optolink_area(1)["total"], "3sf"))
    return rows, checks


@dataclass(frozen=True)
class AcceleratorRequirement:
    name: str
    hardware: str
    schemes: tuple[str, ...]
    bandwidths: tuple[float, ...]  # GB/s


ACCELERATORS = tuple(AcceleratorRequirement(*row) for row in pc.ACCELERATORS)


def min_channels_for(required_gbs: float, per_channel_rate: float = pc.PER_CHANNEL_RATE_GBYTES) -> int:
    return max(1, math.ceil(round(required_gbs / per_channel_rate, 9)))


def compare(channels: int, params: PhotonicParams = PhotonicParams()) -> list[dict]:
    """Which surveyed accelerators a ``channels``-wide OptoLink satisfies.

    Accelerators quoting several bandwidths get one row per figure.
    """
    if channels < 1:
        raise ValueError("channels must be >= 1")
    provided = optolink_bandwidth(channels, params.per_channel_rate) * 1000.0
    rows = []
    for acc in ACCELERATORS:
        for need in acc.bandwidths:
            rows.append(
                {
                    "name": acc.name,
                    "hardware": acc.hardware,
                    "schemes": "/".join(acc.schemes),
                    "required_GBps": need,
                    "provided_GBps": provided,
                    "meets": provided >= need,
                    "min_channels": min_channels_for(need, params.per_channel_rate),
                }
            )
    return rows


FULL_ORACLE_MAX_N = 1024
SAMPLED_INDICES = 16


def _cyclic_coeff(a: list[int], b: list[int], k: int, q: int) -> int:
    n = len(a)
    return sum(a[i] * b[(k - i) % n] for i in range(n)) % q


def ntt_prime(n: int, floor: int = 1 << 16) -> int:
    """Smallest prime q > ``floor`` with q = 1 (mod n)."""
    q = (floor // n + 1) * n + 1
    while not is_prime(q):
        q += n
    return q


def ntt_selftest(max_n: int, seed: int = 0, trials: int = 4, inject_fault: bool = False) -> list[dict]:
    """Property checks for every power of two up to ``max_n``.

    With ``inject_fault`` the cached twiddles are corrupted, which must make
    the suite fail for any ``max_n >= 2``.
    """
    if max_n < 1 or max_n & (max_n - 1):
        raise ValueError(f"max_n={max_n} is not a power of two")
    rng = random.Random(seed)
    q = ntt_prime(max_n)
    rows = []
    n = 1
    while n <= max_n:
        ctx = make_context(q, n)
        if inject_fault and n >= 2:
            ctx = corrupt_twiddles(ctx)
        oracle_ok = roundtrip_ok = conv_ok = True
        counter = ButterflyCounter()
        full = n <= FULL_ORACLE_MAX_N
        runs = trials if n <= 256 else 1
        for _ in range(runs):
            a, b = ctx.random_poly(rng), ctx.random_poly(rng)
            fast = ntt_fast(ctx, a, counter)
            roundtrip_ok &= intt_fast(ctx, fast) == a
            prod = poly_mul_ntt(ctx, a, b)
            if full:
                oracle_ok &= fast == ntt_direct(ctx, a)
                conv_ok &= prod == poly_mul_naive(ctx, a, b)
            else:
                idx = sorted(rng.sample(range(n), SAMPLED_INDICES))
                oracle_ok &= [fast[i] for i in idx] == ntt_direct_at(ctx, a, idx)
                conv_ok &= [prod[k] for k in idx] == [_cyclic_coeff(a, b, k, q) for k in idx]
        count_ok = counter.butterflies == runs * butterfly_count(n)
        rows.append(
            {
                "n": n,
                "q": q,
                "omega": ctx.omega,
                "oracle": oracle_ok,
                "roundtrip": roundtrip_ok,
                "convolution": conv_ok,
                "butterflies": butterfly_count(n),
                "butterfly_count_ok": count_ok,
                "passed": oracle_ok and roundtrip_ok and conv_ok and count_ok,
            }
        )
        n *= 2
    return rows
