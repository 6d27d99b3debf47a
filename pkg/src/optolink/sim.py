"""Phase-level discrete-event model of NTT traffic over an OptoLink topology.

Every transform goes through three phases:

load
    input coefficients and twiddle factors stream from memory to the cores on
    their own waveguides, in parallel;
compute
    the cores execute the butterflies of the transform;
store
    results stream back to memory.

Without overlap, transforms run back to back.  With overlap, they form a
three-stage pipeline whose initiation interval is the slowest phase (or the
shared memory port, when a memory bandwidth cap is set).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Sequence

from . import published as pc
from .errors import InvalidTopology, InvalidWorkload
from .link import PhotonicParams
from .ntt import butterfly_count, butterfly_schedule, is_power_of_two
from .perf import DEFAULT_BASELINE, ElectricalBaseline, PerfReport, perf_report, propagation_latency
from .topology import OptoLinkTopology, build_reference_topology, validate_topology

TWIDDLE_MODES = ("per_transform", "per_stage", "cached")
LINK_KINDS = ("optical", "electrical")
BALANCE_TOLERANCE = 0.10


@dataclass(frozen=True)
class WorkloadOverride:
    """Explicit per-transform traffic and work for non-NTT scenarios."""

    bytes_in: float = 0.0
    bytes_twiddle: float = 0.0
    bytes_out: float = 0.0
    compute_ops: float = 0.0
    ops_rate: float = 1.0  # ops/s

    def __post_init__(self) -> None:
        if min(self.bytes_in, self.bytes_twiddle, self.bytes_out, self.compute_ops) < 0:
            raise InvalidWorkload("override byte and op counts must be non-negative")
        if not self.ops_rate > 0:
            raise InvalidWorkload("ops_rate must be positive")


@dataclass(frozen=True)
class Workload:
    """A batch of ``num_transforms`` size-``n`` NTTs on ``w``-bit coefficients.

    ``cores=None`` uses one compute core per topology core.  ``buffering_depth``
    enables the read-after-write stall model; ``None`` means fully buffered.
    """

    n: int = 1024
    coefficient_bitwidth: int = 64
    num_transforms: int = 1
    cores: int | None = None
    butterflies_per_cycle: int = 1
    clock_hz: float = 300e6
    twiddle_mode: str = "per_transform"
    buffering_depth: int | None = None
    spill_latency: int = 4  # cycles
    override: WorkloadOverride | None = None

    def __post_init__(self) -> None:
        if self.override is None and not is_power_of_two(self.n):
            raise InvalidWorkload(f"n={self.n} is not a power of two")
        if self.num_transforms < 1:
            raise InvalidWorkload("num_transforms must be >= 1")
        if self.coefficient_bitwidth < 1:
            raise InvalidWorkload("coefficient_bitwidth must be >= 1")
        if self.cores is not None and self.cores < 1:
            raise InvalidWorkload("cores must be >= 1")
        if self.butterflies_per_cycle < 1 or not self.clock_hz > 0:
            raise InvalidWorkload("compute rate must be positive")
        if self.twiddle_mode not in TWIDDLE_MODES:
            raise InvalidWorkload(f"twiddle_mode must be one of {TWIDDLE_MODES}")
        if self.buffering_depth is not None and self.buffering_depth < 1:
            raise InvalidWorkload("buffering_depth must be >= 1")
        if self.spill_latency < 0:
            raise InvalidWorkload("spill_latency must be non-negative")

    def compute_rate(self, default_cores: int) -> float:
        """Butterflies per second."""
        cores = self.cores if self.cores is not None else default_cores
        return cores * self.butterflies_per_cycle * self.clock_hz

    def traffic(self) -> tuple[float, float, float]:
        """Bytes in, twiddle bytes and bytes out for one transform."""
        if self.override is not None:
            o = self.override
            return o.bytes_in, o.bytes_twiddle, o.bytes_out
        words = self.n * self.coefficient_bitwidth / 8
        twiddle = {
            "per_transform": words,
            "per_stage": butterfly_count(self.n) * self.coefficient_bitwidth / 8,
            "cached": 0.0,
        }[self.twiddle_mode]
        return words, twiddle, words


@dataclass(frozen=True)
class SimResult:
    """Timings are per batch except ``load_time``/``compute_time``/``store_time``,
    which are per transform."""

    load_time: float
    compute_time: float
    store_time: float
    total_time: float
    channel_utilization: dict[int, float]
    bottleneck: str
    stall_count: int
    num_transforms: int = 1
    butterflies: int = 0
    bytes_moved: float = 0.0
    perf: PerfReport | None = None

    @property
    def transfer_time(self) -> float:
        return self.load_time + self.store_time

    def to_dict(self) -> dict:
        d = asdict(self)
        d["channel_utilization"] = {str(k): v for k, v in self.channel_utilization.items()}
        d["transfer_time"] = self.transfer_time
        if self.perf is None:
            d.pop("perf")
        return d


def raw_conflict_check(
    schedule: Sequence[Sequence[tuple[int, int]]],
    buffering_depth: int,
    spill_latency: int = 4,
) -> int:
    """Stall cycles caused by read-after-write conflicts.

    One butterfly issues per cycle, in schedule order, and its two outputs are
    ready one cycle later.  Each stage writes its outputs into a ping-pong
    bank holding its ``buffering_depth`` most recent values; the next stage
    reads those directly.  Older outputs spill to memory and only become
    readable ``spill_latency`` cycles after production.  A butterfly whose
    input is not yet readable stalls until it is.
    """
    if buffering_depth < 1:
        raise ValueError("buffering_depth must be >= 1")
    producer_issue: dict[int, int] = {}  # coefficient -> issue cycle of its last writer
    in_bank: set[int] = set()  # previous stage's outputs still held in the bank
    t = -1
    stalls = 0
    for stage in schedule:
        order = [x for pair in stage for x in pair]
        issued = []
        for a, b in stage:
            ready = t + 1
            for x in (a, b):
                if x not in producer_issue:
                    continue
                lag = 1 if x in in_bank else 1 + spill_latency
                ready = max(ready, producer_issue[x] + lag)
            stalls += ready - (t + 1)
            t = ready
            issued.append((a, b, t))
        for a, b, cycle in issued:
            producer_issue[a] = producer_issue[b] = cycle
        in_bank = set(order[-buffering_depth:])
    return stalls


def _role_link_rate(t: OptoLinkTopology, role: str, link_width: int, params: PhotonicParams, link: str,
                    baseline: ElectricalBaseline) -> float:
    """Aggregate bytes/s a role can move: one link of ``link_width`` channels per served core."""
    cores = len(t.cores_served(role))
    if link == "optical":
        per_core = link_width * params.per_channel_rate * 1e9
    else:
        per_core = baseline.bitrate(link_width) * 1e9
    return cores * per_core


def _phase_time(nbytes: float, rate: float, floor_s: float) -> float:
    if nbytes <= 0:
        return 0.0
    if math.isinf(rate):
        return floor_s
    return max(nbytes / rate, floor_s)


def classify_bottleneck(transfer: float, compute: float, tolerance: float = BALANCE_TOLERANCE) -> str:
    hi = max(transfer, compute)
    if hi == 0 or abs(transfer - compute) <= tolerance * hi:
        return "balanced"
    return "transfer" if transfer > compute else "compute"


def simulate(
    t: OptoLinkTopology,
    wl: Workload,
    params: PhotonicParams = PhotonicParams(),
    overlap: bool = True,
    memory_bandwidth: float | None = None,
    link: str = "optical",
    link_width: int | None = None,
    baseline: ElectricalBaseline = DEFAULT_BASELINE,
) -> SimResult:
    """Run one workload over ``t``.

    ``memory_bandwidth`` (bytes/s) caps the memory side: a phase can never move
    its bytes faster than the cap, and overlapped transforms share it.
    ``link="electrical"`` replaces every optical link by the electrical bus of
    the same width.  ``link_width`` is the per-core link width in channels and
    defaults to the topology bitwidth.
    """
    report = validate_topology(t)
    if not report.ok:
        raise InvalidTopology("; ".join(report.violations))
    if link not in LINK_KINDS:
        raise ValueError(f"link must be one of {LINK_KINDS}")
    if memory_bandwidth is not None and not memory_bandwidth > 0:
        raise InvalidWorkload("memory_bandwidth must be positive")
    width = t.bitwidth if link_width is None else link_width
    if width < 1:
        raise InvalidTopology("link width must be >= 1")

    bytes_in, bytes_tw, bytes_out = wl.traffic()
    rates = {role: _role_link_rate(t, role, width, params, link, baseline) for role in ("input_data", "twiddle", "output")}
    floors = {}
    for role in rates:
        length = max((wg.length for wg in t.waveguides_for_role(role)), default=0.0)
        floors[role] = propagation_latency(length) * 1e-12
    if link == "electrical":
        floors = {role: baseline.latency * 1e-9 for role in rates}

    t_in = _phase_time(bytes_in, rates["input_data"], floors["input_data"])
    t_tw = _phase_time(bytes_tw, rates["twiddle"], floors["twiddle"])
    t_out = _phase_time(bytes_out, rates["output"], floors["output"])
    load = max(t_in, t_tw)
    store = t_out
    if memory_bandwidth is not None:
        load = max(load, (bytes_in + bytes_tw) / memory_bandwidth)
        store = max(store, bytes_out / memory_bandwidth)

    stalls = 0
    if wl.override is not None:
        butterflies = 0
        compute = wl.override.compute_ops / wl.override.ops_rate
    else:
        butterflies = butterfly_count(wl.n)
        compute = butterflies / wl.compute_rate(t.num_cores)
        if wl.buffering_depth is not None:
            stalls = raw_conflict_check(butterfly_schedule(wl.n), wl.buffering_depth, wl.spill_latency)
            compute += stalls / wl.clock_hz

    k = wl.num_transforms
    phases = (load, compute, store)
    if overlap:
        interval = max(phases)
        if memory_bandwidth is not None:
            interval = max(interval, (bytes_in + bytes_tw + bytes_out) / memory_bandwidth)
        total = (k - 1) * interval + sum(phases)
    else:
        total = k * sum(phases)

    role_busy = {"input_data": t_in, "twiddle": t_tw, "output": t_out}
    utilization = {}
    for wg in t.waveguides:
        roles = {ch.role for ch in wg.channels}
        busy = k * max((role_busy[r] for r in roles), default=0.0)
        utilization[wg.id] = min(busy / total, 1.0) if total > 0 else 0.0

    return SimResult(
        load_time=load,
        compute_time=compute,
        store_time=store,
        total_time=total,
        channel_utilization=utilization,
        bottleneck=classify_bottleneck(load + store, compute),
        stall_count=stalls,
        num_transforms=k,
        butterflies=butterflies,
        bytes_moved=k * (bytes_in + bytes_tw + bytes_out),
    )


@dataclass(frozen=True)
class SimConfig:
    """Everything needed to rebuild a topology and run one simulation."""

    cores: int = 4
    bitwidth: int = 128
    waveguide_um: float = pc.REFERENCE_WAVEGUIDE_UM
    workload: Workload = field(default_factory=Workload)
    params: PhotonicParams = field(default_factory=PhotonicParams)
    overlap: bool = True
    memory_bandwidth: float | None = None
    link: str = "optical"
    link_channels: int | None = None
    topology: OptoLinkTopology | None = None

    def build_topology(self) -> OptoLinkTopology:
        if self.topology is not None:
            return self.topology
        return build_reference_topology(self.cores, self.bitwidth, self.waveguide_um)


SWEEP_AXES = ("cores", "bitwidth", "channels", "n")


def run_config(cfg: SimConfig, baseline: ElectricalBaseline = DEFAULT_BASELINE) -> SimResult:
    t = cfg.build_topology()
    result = simulate(
        t,
        cfg.workload,
        cfg.params,
        overlap=cfg.overlap,
        memory_bandwidth=cfg.memory_bandwidth,
        link=cfg.link,
        link_width=cfg.link_channels,
        baseline=baseline,
    )
    perf = perf_report(
        t.bitwidth,
        t.num_cores,
        cfg.params,
        baseline,
        waveguide_um=max((wg.length for wg in t.waveguides), default=0.0),
        channels=cfg.link_channels,
    )
    return replace(result, perf=perf)


def sweep_configs(base: SimConfig, axis: str, values: Iterable[int]) -> list[SimConfig]:
    if axis not in SWEEP_AXES:
        raise ValueError(f"axis must be one of {SWEEP_AXES}")
    if base.topology is not None and axis in ("cores", "bitwidth"):
        raise ValueError(f"cannot sweep {axis} over an explicit topology")
    configs = []
    for v in values:
        if axis == "cores":
            configs.append(replace(base, cores=v))
        elif axis == "bitwidth":
            configs.append(replace(base, bitwidth=v))
        elif axis == "channels":
            configs.append(replace(base, link_channels=v))
        else:
            configs.append(replace(base, workload=replace(base.workload, n=v)))
    return configs


def sweep(
    base: SimConfig,
    axis: str,
    values: Iterable[int],
    max_workers: int | None = None,
    baseline: ElectricalBaseline = DEFAULT_BASELINE,
) -> list[SimResult]:
    """One independent run per value, returned in input order."""
    configs = sweep_configs(base, axis, values)
    if max_workers and max_workers > 1 and len(configs) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda c: run_config(c, baseline), configs))
    return [run_config(c, baseline) for c in configs]
