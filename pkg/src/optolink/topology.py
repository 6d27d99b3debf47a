"""OptoLink network descriptions: waveguides, wavelength channels and roles.

The reference layout connects ``num_cores`` NTT cores to one memory
controller over five waveguides:

* waveguides 1-2 carry input coefficients (memory -> core),
* waveguides 3-4 carry twiddle factors (memory -> core), reusing the
  wavelength ids of waveguides 1-2,
* waveguide 5 carries results (core -> memory) on its own wavelength group.

Each core gets two wavelengths on every data and twiddle waveguide and two
on the output waveguide, so four cores use 24 distinct wavelengths: 1-16 for
inputs and twiddles, 17-24 for results.

A wavelength here stands for a channel *group*.  The data-path width used by
the power and area models is ``num_cores * bitwidth`` optical channels,
exposed as :attr:`OptoLinkTopology.total_channels`.
"""

from __future__ import annotations

import json
import warnings
from collections import Counter
from dataclasses import dataclass, field

from . import published as pc
from .errors import InvalidCount
from .link import OpticalPath

MEMORY_CONTROLLER = "memory_controller"
ROLES = ("input_data", "twiddle", "output")
DEFAULT_WAVEGUIDE_UM = pc.REFERENCE_WAVEGUIDE_UM


class WavelengthDensityWarning(UserWarning):
    """A waveguide multiplexes more wavelengths than WDM can currently support."""


def core_endpoint(core: int) -> str:
    return f"core{core}"


def parse_core(endpoint: str) -> int | None:
    if endpoint.startswith("core") and endpoint[4:].isdigit():
        return int(endpoint[4:])
    return None


@dataclass(frozen=True)
class OpticalChannel:
    wavelength_id: int
    waveguide_id: int
    role: str
    source: str
    sink: str

    @property
    def core(self) -> int | None:
        """Core served by this channel (the non-memory endpoint)."""
        end = self.source if self.role == "output" else self.sink
        return parse_core(end)


@dataclass(frozen=True)
class Waveguide:
    id: int
    length: float = DEFAULT_WAVEGUIDE_UM  # um
    channels: tuple[OpticalChannel, ...] = ()


@dataclass(frozen=True)
class OptoLinkTopology:
    num_cores: int
    bitwidth: int
    waveguides: tuple[Waveguide, ...] = field(default=())

    @property
    def channels(self) -> list[OpticalChannel]:
        return [ch for wg in self.waveguides for ch in wg.channels]

    @property
    def total_channels(self) -> int:
        """Data-path optical channels (bitwidth x cores) used for power and area."""
        return self.num_cores * self.bitwidth

    @property
    def channel_count(self) -> int:
        return sum(len(wg.channels) for wg in self.waveguides)

    @property
    def distinct_wavelengths(self) -> int:
        return len({ch.wavelength_id for ch in self.channels})

    @property
    def rings_per_waveguide(self) -> dict[int, int]:
        # one modulator ring and one filter ring per channel
        return {wg.id: pc.MRRS_PER_CHANNEL * len(wg.channels) for wg in self.waveguides}

    def role_counts(self) -> dict[str, int]:
        counts = Counter(ch.role for ch in self.channels)
        return {role: counts.get(role, 0) for role in ROLES}

    def waveguides_for_role(self, role: str) -> list[Waveguide]:
        return [wg for wg in self.waveguides if any(ch.role == role for ch in wg.channels)]

    def cores_served(self, role: str) -> set[int]:
        return {ch.core for ch in self.channels if ch.role == role and ch.core is not None}

    def to_dict(self) -> dict:
        return {
            "num_cores": self.num_cores,
            "bitwidth": self.bitwidth,
            "waveguides": [
                {
                    "id": wg.id,
                    "length_um": wg.length,
                    "channels": [
                        {"wavelength_id": ch.wavelength_id, "role": ch.role, "source": ch.source, "sink": ch.sink}
                        for ch in wg.channels
                    ],
                }
                for wg in self.waveguides
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> OptoLinkTopology:
        waveguides = []
        for wg in data.get("waveguides", []):
            wid = int(wg["id"])
            chans = tuple(
                OpticalChannel(int(ch["wavelength_id"]), wid, ch["role"], ch["source"], ch["sink"])
                for ch in wg.get("channels", [])
            )
            waveguides.append(Waveguide(wid, float(wg.get("length_um", DEFAULT_WAVEGUIDE_UM)), chans))
        return cls(int(data["num_cores"]), int(data["bitwidth"]), tuple(waveguides))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> OptoLinkTopology:
        return cls.from_dict(json.loads(text))


def build_reference_topology(
    num_cores: int = 4,
    bitwidth: int = 128,
    waveguide_length: float = DEFAULT_WAVEGUIDE_UM,
) -> OptoLinkTopology:
    if num_cores < 1:
        raise InvalidCount(f"num_cores must be >= 1, got {num_cores}")
    if bitwidth < 1:
        raise InvalidCount(f"bitwidth must be >= 1, got {bitwidth}")
    c = num_cores
    per_wg = {wid: [] for wid in range(1, 6)}
    for k in range(c):
        core = core_endpoint(k)
        for offset, (data_wg, tw_wg) in enumerate(((1, 3), (2, 4))):
            base = offset * 2 * c + 2 * k
            for lam in (base + 1, base + 2):
                per_wg[data_wg].append(OpticalChannel(lam, data_wg, "input_data", MEMORY_CONTROLLER, core))
                per_wg[tw_wg].append(OpticalChannel(lam, tw_wg, "twiddle", MEMORY_CONTROLLER, core))
        for lam in (4 * c + 2 * k + 1, 4 * c + 2 * k + 2):
            per_wg[5].append(OpticalChannel(lam, 5, "output", core, MEMORY_CONTROLLER))
    waveguides = tuple(Waveguide(wid, waveguide_length, tuple(chs)) for wid, chs in per_wg.items())
    return OptoLinkTopology(num_cores, bitwidth, waveguides)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_topology(t: OptoLinkTopology) -> ValidationReport:
    """Collect every structural problem; never raises."""
    report = ValidationReport()
    v = report.violations
    seen_wg = set()
    for wg in t.waveguides:
        if wg.id in seen_wg:
            v.append(f"duplicate waveguide id {wg.id}")
        seen_wg.add(wg.id)
        if wg.length < 0:
            v.append(f"waveguide {wg.id}: negative length")
        lambdas = Counter(ch.wavelength_id for ch in wg.channels)
        for lam, count in sorted(lambdas.items()):
            if count > 1:
                v.append(f"duplicate wavelength: lambda {lam} used {count} times in waveguide {wg.id}")
        for ch in wg.channels:
            where = f"waveguide {wg.id}, lambda {ch.wavelength_id}"
            if ch.waveguide_id != wg.id:
                v.append(f"{where}: channel claims waveguide {ch.waveguide_id}")
            if ch.wavelength_id < 1:
                v.append(f"{where}: wavelength id must be positive")
            if ch.role not in ROLES:
                v.append(f"{where}: unknown role {ch.role!r}")
                continue
            v.extend(f"{where}: {problem}" for problem in _endpoint_problems(ch, t.num_cores))
    for core in range(t.num_cores):
        for role in ROLES:
            if not any(ch.role == role and ch.core == core for ch in t.channels):
                v.append(f"missing role: core {core} has no {role} channel")
    return report


def _endpoint_problems(ch: OpticalChannel, num_cores: int) -> list[str]:
    problems = []
    if ch.source == ch.sink:
        problems.append("source equals sink")
    if ch.role == "output":
        core_end, mem_end = ch.source, ch.sink
        if mem_end != MEMORY_CONTROLLER:
            problems.append("output channel must terminate at the memory controller")
    else:
        core_end, mem_end = ch.sink, ch.source
        if mem_end != MEMORY_CONTROLLER:
            problems.append(f"{ch.role} channel must originate at the memory controller")
    core = parse_core(core_end)
    if core is None or core >= num_cores:
        problems.append(f"dangling endpoint {core_end!r}")
    return problems


@dataclass(frozen=True)
class WavelengthDemand:
    distinct_wavelengths: int
    max_per_waveguide: int
    exceeds_density_limit: bool


def wavelength_demand(t: OptoLinkTopology, limit: int = pc.MAX_WAVELENGTHS_PER_WAVEGUIDE) -> WavelengthDemand:
    per_wg = [len({ch.wavelength_id for ch in wg.channels}) for wg in t.waveguides]
    max_per = max(per_wg, default=0)
    over = max_per > limit
    if over:
        warnings.warn(
            f"{max_per} wavelengths in one waveguide exceeds the WDM limit of {limit}",
            WavelengthDensityWarning,
            stacklevel=2,
        )
    return WavelengthDemand(t.distinct_wavelengths, max_per, over)


def worst_case_path(t: OptoLinkTopology, waveguide_id: int) -> OpticalPath:
    """Longest optical path on one waveguide.

    The last channel in line passes the modulator and filter rings of every
    other channel before being dropped into its photodetector.
    """
    wg = next(w for w in t.waveguides if w.id == waveguide_id)
    others = max(len(wg.channels) - 1, 0)
    return OpticalPath(
        couplers_crossed=1,
        waveguide_length=wg.length / 1e4,
        through_rings_passed=pc.MRRS_PER_CHANNEL * others,
        has_drop_ring=True,
        has_photodetector=True,
    )
