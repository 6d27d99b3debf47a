"""Closed-form latency, bandwidth, power and area models.

OptoLink figures are analytical; the electrical baseline is a calibrated
lookup seeded with synthesis results and linearly interpolated in core count.

Units follow the quantities they are usually quoted in: latency in ps or ns,
bandwidth in GB/s or TB/s, OptoLink power in W, electrical power in uW,
OptoLink area in mm^2 and electrical area in um^2.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import asdict, dataclass, field

from . import published as pc
from .errors import NegativeLength, OutOfRange, UnsupportedBitwidth, ZeroLatency, ZeroRate
from .link import PhotonicParams, channel_electrical_power

# Float products such as 1600 * 3.04 land a hair above the integer they
# represent; round before taking ceilings.
_CEIL_DIGITS = 9


def propagation_latency(length_um: float, delay_per_mm: float = pc.PROPAGATION_PS_PER_MM) -> float:
    """Waveguide time of flight in ps."""
    if length_um < 0:
        raise NegativeLength(f"waveguide length {length_um} um is negative")
    return length_um / 1000.0 * delay_per_mm


def serialization_latency(bits: int, rate_gbps: float = pc.PER_WAVELENGTH_RATE_GBPS) -> float:
    """Time in ns to clock ``bits`` out at ``rate_gbps``."""
    if rate_gbps <= 0:
        raise ZeroRate(f"line rate must be positive, got {rate_gbps}")
    if bits < 0:
        raise ValueError("bit count must be non-negative")
    return bits / rate_gbps


def optolink_bandwidth(channels: int, per_channel_rate: float = pc.PER_CHANNEL_RATE_GBYTES) -> float:
    """Aggregate OptoLink bandwidth in TB/s."""
    if channels < 0:
        raise ValueError("channel count must be non-negative")
    return channels * per_channel_rate / 1000.0


def electrical_bitrate(bitwidth: int, latency_ns: float = pc.ELECTRICAL_LATENCY_NS) -> float:
    """Electrical bus throughput in GB/s: one ``bitwidth``-bit word per latency period."""
    if latency_ns <= 0:
        raise ZeroLatency(f"latency must be positive, got {latency_ns}")
    if bitwidth < 1:
        raise ValueError("bitwidth must be >= 1")
    return bitwidth / latency_ns / 8.0


def equivalent_electrical_bitwidth(
    target_tbps: float,
    latency_ns: float = pc.ELECTRICAL_LATENCY_NS,
    strict: bool = False,
) -> int:
    """Electrical data width needed to match ``target_tbps``.

    By default the width is ``ceil(target_GB/s * latency_ns)``, which is how the
    widely quoted 4864-bit figure for 1.6 TB/s at 3.04 ns is obtained.  That
    count is the number of bytes moved per latency period; ``strict=True``
    instead returns the smallest width whose :func:`electrical_bitrate` reaches
    the target, which is eight times larger.
    """
    if target_tbps <= 0:
        raise ValueError("target bandwidth must be positive")
    if latency_ns <= 0:
        raise ZeroLatency(f"latency must be positive, got {latency_ns}")
    width = target_tbps * 1000.0 * latency_ns
    if strict:
        width *= 8.0
    return max(1, math.ceil(round(width, _CEIL_DIGITS)))


def _interp(points: dict[int, float], x: float, extrapolate: bool) -> float:
    xs = sorted(points)
    if x in points:
        return points[x]
    if not extrapolate and not xs[0] <= x <= xs[-1]:
        raise OutOfRange(f"{x} outside seeded range [{xs[0]}, {xs[-1]}]")
    if len(xs) == 1:
        return points[xs[0]]
    i = min(max(bisect_left(xs, x), 1), len(xs) - 1)
    x0, x1 = xs[i - 1], xs[i]
    y0, y1 = points[x0], points[x1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


@dataclass(frozen=True)
class ElectricalBaseline:
    latency: float = pc.ELECTRICAL_LATENCY_NS  # ns
    power_table: dict[tuple[int, int], float] = field(
        default_factory=lambda: {k: uw for k, (uw, _) in pc.POWER_TABLE.items()}
    )  # (bitwidth, cores) -> uW
    area_table: dict[int, float] = field(default_factory=lambda: dict(pc.ELECTRICAL_AREA_UM2))  # cores -> um^2

    def __post_init__(self) -> None:
        if self.latency <= 0:
            raise ZeroLatency("electrical latency must be positive")

    def bitrate(self, bitwidth: int) -> float:
        return electrical_bitrate(bitwidth, self.latency)

    def power(self, bitwidth: int, cores: float) -> float:
        """Power in uW; exact at seeded points, linear in cores elsewhere."""
        row = {c: uw for (b, c), uw in self.power_table.items() if b == bitwidth}
        if not row:
            supported = sorted({b for b, _ in self.power_table})
            raise UnsupportedBitwidth(f"no electrical power data for {bitwidth}-bit (have {supported})")
        if cores <= 0:
            raise ValueError("core count must be positive")
        return _interp(row, cores, extrapolate=True)

    def area(self, cores: float, extrapolate: bool = False) -> float:
        """128-bit network area in um^2."""
        return _interp(self.area_table, cores, extrapolate)


DEFAULT_BASELINE = ElectricalBaseline()


def electrical_power(bitwidth: int, cores: float, baseline: ElectricalBaseline = DEFAULT_BASELINE) -> float:
    return baseline.power(bitwidth, cores)


def electrical_area(cores: float, extrapolate: bool = False, baseline: ElectricalBaseline = DEFAULT_BASELINE) -> float:
    return baseline.area(cores, extrapolate)


def optolink_power(bitwidth: int, cores: int, params: PhotonicParams = PhotonicParams()) -> dict[str, float]:
    """Power breakdown in W for ``bitwidth * cores`` optical channels.

    ``total`` is laser + tx + rx.  ``ring_heating`` is the transmitter ring
    heater share, already contained in ``tx`` and reported for information.
    """
    if bitwidth < 0 or cores < 0:
        raise ValueError("bitwidth and cores must be non-negative")
    channels = bitwidth * cores
    per = channel_electrical_power(params)
    laser = channels * per["laser"] / 1000.0
    tx = channels * per["tx"] / 1000.0
    rx = channels * per["rx"] / 1000.0
    return {
        "channels": channels,
        "laser": laser,
        "tx": tx,
        "rx": rx,
        "ring_heating": channels * params.ring_heating_power / 1000.0,
        "total": laser + tx + rx,
    }


def optolink_area(
    channels: int,
    transceiver_mm2: float = pc.TRANSCEIVER_AREA_MM2_PER_WAVELENGTH,
    mrr_mm2: float = pc.MRR_AREA_MM2,
    rings_per_channel: int = pc.MRRS_PER_CHANNEL,
) -> dict[str, float]:
    """Photonic footprint in mm^2: a transmitter, a receiver and two rings per channel."""
    if channels < 0:
        raise ValueError("channel count must be non-negative")
    tx = channels * transceiver_mm2
    rx = channels * transceiver_mm2
    mrr = channels * rings_per_channel * mrr_mm2
    return {"tx": tx, "rx": rx, "mrr": mrr, "total": tx + rx + mrr}


@dataclass(frozen=True)
class PerfReport:
    bitwidth: int
    cores: int
    channels: int  # bitwidth * cores
    propagation_latency: float  # ps
    serialization_latency: float  # ns
    aggregate_bandwidth: float  # GB/s over a bitwidth-channel link
    power: dict[str, float]  # W
    area: dict[str, float]  # mm^2
    electrical_latency: float  # ns
    electrical_bitrate: float  # GB/s
    electrical_power: float | None  # uW
    electrical_area: float | None  # um^2
    bandwidth_ratio: float  # OptoLink / electrical

    def to_dict(self) -> dict:
        return asdict(self)


def perf_report(
    bitwidth: int,
    cores: int,
    params: PhotonicParams = PhotonicParams(),
    baseline: ElectricalBaseline = DEFAULT_BASELINE,
    waveguide_um: float = pc.REFERENCE_WAVEGUIDE_UM,
    sequence_bits: int = pc.PRBS_SEQUENCE_BITS,
    channels: int | None = None,
) -> PerfReport:
    """Evaluate every model for one design point.

    ``channels`` sets the link width for bandwidth; it defaults to ``bitwidth``.
    Power and area always count ``bitwidth * cores`` channels.
    """
    link = bitwidth if channels is None else channels
    bw = optolink_bandwidth(link, params.per_channel_rate) * 1000.0
    el_rate = baseline.bitrate(bitwidth)
    try:
        el_power = baseline.power(bitwidth, cores)
    except (UnsupportedBitwidth, ValueError):
        el_power = None
    try:
        el_area = baseline.area(cores) if bitwidth == 128 else None
    except OutOfRange:
        el_area = None
    return PerfReport(
        bitwidth=bitwidth,
        cores=cores,
        channels=bitwidth * cores,
        propagation_latency=propagation_latency(waveguide_um),
        serialization_latency=serialization_latency(sequence_bits, params.per_wavelength_rate),
        aggregate_bandwidth=bw,
        power=optolink_power(bitwidth, cores, params),
        area=optolink_area(bitwidth * cores),
        electrical_latency=baseline.latency,
        electrical_bitrate=el_rate,
        electrical_power=el_power,
        electrical_area=el_area,
        bandwidth_ratio=bw / el_rate,
    )
