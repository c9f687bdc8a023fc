"""Shared domain types, registries and default constants."""

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Optional, Tuple


class _Parseable(Enum):
    @classmethod
    def parse(cls, text):
        """Look up a member by value or name, case-insensitively."""
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        for member in cls:
            if key in (member.value.lower(), member.name.lower()):
                return member
        choices = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown {cls.__name__} {text!r} (expected one of: {choices})")


class Compartment(_Parseable):
    ENGINE = "engine"
    CHASSIS = "chassis"
    PASSENGER = "passenger"


class Technology(_Parseable):
    BAND_2_4GHZ = "2.4GHz"
    UWB = "UWB"
    MMWAVE = "mmWave"


class Domain(_Parseable):
    ENGINE = "engine"
    POWERTRAIN = "powertrain"
    CHASSIS = "chassis"
    OCCUPANT_SAFETY = "occupant_safety"
    BODY = "body"


class Security(_Parseable):
    HIGH = "high"
    LOW = "low"


COMPARTMENTS = tuple(Compartment)
TECHNOLOGIES = tuple(Technology)


@dataclass(frozen=True)
class TechnologyProfile:
    """Radio constants for one band.

    ``eirp_dbm`` already includes the antenna gain; RX gain is taken as 0 dBi.
    """
    tech: Technology
    eirp_dbm: float
    antenna_gain_dbi: float
    noise_floor_dbm: float
    max_rate_kbps: float
    nb_suppression: bool = False
    transceiver_power_mw: float = 0.0

    def __post_init__(self):
        if not self.max_rate_kbps > 0:
            raise ValueError(f"{self.tech.value}: max_rate_kbps must be > 0")

    @property
    def conducted_power_dbm(self):
        """Transmit power without the antenna gain."""
        return self.eirp_dbm - self.antenna_gain_dbi


@dataclass(frozen=True)
class NodeRequirement:
    domain: Domain
    compartment: Compartment
    power_mw: float
    rate_kbps: Tuple[float, float]
    security_reliability: Security
    power_range_mw: Optional[Tuple[float, float]] = None
    name: str = ""
    link_id: Optional[str] = None
    # per-sensor detail is not tabulated; worst case is <10 kHz at <20 bit
    sensing_rate_hz: Optional[float] = None
    bit_resolution: Optional[int] = None

    def __post_init__(self):
        lo, hi = self.rate_kbps
        if lo < 0 or hi < lo:
            raise ValueError(f"bad rate interval {self.rate_kbps}")
        if self.power_mw < 0:
            raise ValueError("power_mw must be >= 0")
        if self.sensing_rate_hz is not None and self.sensing_rate_hz <= 0:
            raise ValueError("sensing_rate_hz must be > 0")
        if self.bit_resolution is not None and self.bit_resolution <= 0:
            raise ValueError("bit_resolution must be > 0")

    @property
    def rate_max_kbps(self):
        # feasibility is judged against the top of the interval
        return self.rate_kbps[1]

    @property
    def label(self):
        return self.name or self.domain.value


@dataclass(frozen=True)
class Link:
    id: str
    compartment: Compartment
    distance_m: float
    los: bool
    measured_path_loss_db: Optional[float] = None

    def __post_init__(self):
        if not self.distance_m > 0:
            raise ValueError(f"link {self.id}: distance_m must be > 0")


# EIRP includes 30 / 0 / 50 dBi antenna gains.
_PROFILES = (
    TechnologyProfile(Technology.BAND_2_4GHZ, eirp_dbm=52.0, antenna_gain_dbi=30.0,
                      noise_floor_dbm=-76.0, max_rate_kbps=54_000.0,
                      nb_suppression=False, transceiver_power_mw=10.0),
    TechnologyProfile(Technology.UWB, eirp_dbm=-11.3, antenna_gain_dbi=0.0,
                      noise_floor_dbm=-84.0, max_rate_kbps=3_000_000.0,
                      nb_suppression=True, transceiver_power_mw=10.0),
    TechnologyProfile(Technology.MMWAVE, eirp_dbm=60.0, antenna_gain_dbi=50.0,
                      noise_floor_dbm=-68.0, max_rate_kbps=7_000_000.0,
                      nb_suppression=False, transceiver_power_mw=30.0),
)


def default_profiles():
    """Return a read-only ``Technology -> TechnologyProfile`` map."""
    return MappingProxyType({p.tech: p for p in _PROFILES})


_REGISTRY = (
    NodeRequirement(Domain.ENGINE, Compartment.ENGINE, 100.0, (10.0, 1000.0),
                    Security.HIGH, name="knock sensor"),
    NodeRequirement(Domain.POWERTRAIN, Compartment.CHASSIS, 100.0, (10.0, 1000.0),
                    Security.HIGH, name="transmission speed"),
    NodeRequirement(Domain.CHASSIS, Compartment.CHASSIS, 100.0, (10.0, 100.0),
                    Security.HIGH, name="wheel speed"),
    NodeRequirement(Domain.OCCUPANT_SAFETY, Compartment.PASSENGER, 100.0, (10.0, 100.0),
                    Security.HIGH, power_range_mw=(1.0, 100.0), name="seat occupancy"),
    NodeRequirement(Domain.BODY, Compartment.PASSENGER, 100.0, (0.0, 10.0),
                    Security.LOW, power_range_mw=(1.0, 100.0), name="rain sensor"),
)


def requirement_registry():
    """One requirement per functional domain, in table order."""
    return list(_REGISTRY)
