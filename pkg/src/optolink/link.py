"""Optical link budget: insertion loss, laser power, per-channel electrical power."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from . import published as pc
from .errors import NegativeLength


@dataclass(frozen=True)
class PhotonicParams:
    """Loss, power and rate constants for one OptoLink design point.

    Losses are in dB (waveguide loss in dB/cm), powers in mW, the line rate
    in Gb/s and the per-channel rate in GB/s.
    """

    laser_source_loss: float = pc.LASER_SOURCE_LOSS_DB
    coupler_loss: float = pc.COUPLER_LOSS_DB
    splitter_loss: float = pc.SPLITTER_LOSS_DB
    waveguide_loss: float = pc.WAVEGUIDE_LOSS_DB_PER_CM
    ring_drop_loss: float = pc.RING_DROP_LOSS_DB
    ring_through_loss: float = pc.RING_THROUGH_LOSS_DB
    photodetector_loss: float = pc.PHOTODETECTOR_LOSS_DB
    ring_heating_power: float = pc.RING_HEATING_MW
    tx_power_per_channel: float = pc.TX_POWER_PER_CHANNEL_MW
    rx_power_per_channel: float = pc.RX_POWER_PER_CHANNEL_MW
    per_wavelength_rate: float = pc.PER_WAVELENGTH_RATE_GBPS
    per_channel_rate: float = pc.PER_CHANNEL_RATE_GBYTES
    laser_wall_power_per_channel: float = pc.LASER_WALL_POWER_PER_CHANNEL_MW
    rx_sensitivity: float = pc.RX_SENSITIVITY_DBM

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name == "rx_sensitivity":
                continue
            if f.name.endswith("_rate"):
                if value <= 0:
                    raise ValueError(f"{f.name} must be positive, got {value}")
            elif value < 0:
                raise ValueError(f"{f.name} must be non-negative, got {value}")

    @classmethod
    def from_dict(cls, overrides: dict | None) -> PhotonicParams:
        overrides = dict(overrides or {})
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"unknown photonic parameters: {sorted(unknown)}")
        return cls(**overrides)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class OpticalPath:
    """Components a signal crosses between the laser and the receiver."""

    couplers_crossed: int = 0
    splitters_crossed: int = 0
    waveguide_length: float = 0.0  # cm
    through_rings_passed: int = 0
    has_drop_ring: bool = False
    has_photodetector: bool = False

    def __post_init__(self) -> None:
        if self.waveguide_length < 0:
            raise NegativeLength(f"waveguide length {self.waveguide_length} cm is negative")
        for name in ("couplers_crossed", "splitters_crossed", "through_rings_passed"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def then(self, other: OpticalPath) -> OpticalPath:
        """Concatenate two path segments; at most one drop ring and one PD overall."""
        if self.has_drop_ring and other.has_drop_ring:
            raise ValueError("a path terminates in a single drop ring")
        if self.has_photodetector and other.has_photodetector:
            raise ValueError("a path terminates in a single photodetector")
        return OpticalPath(
            couplers_crossed=self.couplers_crossed + other.couplers_crossed,
            splitters_crossed=self.splitters_crossed + other.splitters_crossed,
            waveguide_length=self.waveguide_length + other.waveguide_length,
            through_rings_passed=self.through_rings_passed + other.through_rings_passed,
            has_drop_ring=self.has_drop_ring or other.has_drop_ring,
            has_photodetector=self.has_photodetector or other.has_photodetector,
        )


def path_insertion_loss(path: OpticalPath, params: PhotonicParams = PhotonicParams()) -> float:
    """Total loss in dB; the laser source term is counted once per path."""
    if path.waveguide_length < 0:
        raise NegativeLength(f"waveguide length {path.waveguide_length} cm is negative")
    loss = params.laser_source_loss
    loss += path.couplers_crossed * params.coupler_loss
    loss += path.splitters_crossed * params.splitter_loss
    loss += path.waveguide_length * params.waveguide_loss
    loss += path.through_rings_passed * params.ring_through_loss
    if path.has_drop_ring:
        loss += params.ring_drop_loss
    if path.has_photodetector:
        loss += params.photodetector_loss
    return loss


def dbm_to_mw(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0)


def mw_to_dbm(mw: float) -> float:
    return 10.0 * math.log10(mw)


def required_laser_power(path: OpticalPath, params: PhotonicParams = PhotonicParams()) -> tuple[float, float]:
    """Laser output needed to hit the receiver sensitivity, as ``(dBm, mW)``."""
    dbm = params.rx_sensitivity + path_insertion_loss(path, params)
    return dbm, dbm_to_mw(dbm)


def channel_electrical_power(params: PhotonicParams = PhotonicParams()) -> dict[str, float]:
    """Per-channel wall power in mW: laser + transmitter + receiver."""
    laser = params.laser_wall_power_per_channel
    tx = params.tx_power_per_channel
    rx = params.rx_power_per_channel
    return {"laser": laser, "tx": tx, "rx": rx, "total": laser + tx + rx}
