"""RF, vibration and thermal harvester models plus energy accounting."""

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import EmptySeries, NonUniformTrace, TimestampMismatch, UnstableIntegration
from .model import Compartment, Technology
from .traces import Trace, TraceKind, align, vibration_input
from .units import G, dbm_to_mw

UNIFORM_RTOL = 1e-6


@dataclass(frozen=True)
class RfehCurve:
    """Rectenna sensitivity and efficiency window.

    Efficiency is interpolated linearly in dBm between the window edges and
    held constant outside them; nothing is harvested below the sensitivity.
    """
    tech: Technology
    sensitivity_dbm: float
    window_dbm: tuple
    efficiency_range: tuple

    def __post_init__(self):
        lo, hi = self.efficiency_range
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError(f"efficiency range {self.efficiency_range} not within [0, 1]")
        if self.window_dbm[1] < self.window_dbm[0]:
            raise ValueError("window_dbm must be (low, high)")

    def efficiency(self, p_in_dbm):
        (w_lo, w_hi), (e_lo, e_hi) = self.window_dbm, self.efficiency_range
        p = np.asarray(p_in_dbm, dtype=float)
        if w_hi == w_lo:
            return np.where(p < w_lo, e_lo, e_hi)
        return np.interp(p, [w_lo, w_hi], [e_lo, e_hi])


_RFEH = (
    RfehCurve(Technology.BAND_2_4GHZ, -20.0, (-10.0, 18.0), (0.115, 0.40)),
    RfehCurve(Technology.UWB, -36.0, (-36.0, -25.0), (0.05, 0.10)),
    # only the 12 % peak is known: flat above the 2 dBm sensitivity
    RfehCurve(Technology.MMWAVE, 2.0, (2.0, 2.0), (0.12, 0.12)),
)


def default_rfeh_curves():
    return {c.tech: c for c in _RFEH}


def rfeh_power(curve, p_in_dbm):
    """Useful DC power in mW for an RF input power in dBm."""
    p = np.asarray(p_in_dbm, dtype=float)
    out = np.where(p < curve.sensitivity_dbm, 0.0, curve.efficiency(p) * dbm_to_mw(p))
    return float(out) if out.ndim == 0 else out


def rf_input_from_link(profile, loss_db):
    """Harvester input from a nearby transmitter.

    The harvesting antenna is not aligned with the transmitter, so the TX
    antenna gain is dropped.
    """
    return profile.conducted_power_dbm - loss_db


# Representative RF input per compartment and band, in dBm.
DEFAULT_RF_INPUT_DBM = {
    Compartment.ENGINE: {Technology.BAND_2_4GHZ: 5.0, Technology.UWB: -30.0,
                         Technology.MMWAVE: 2.0},
    Compartment.CHASSIS: {Technology.BAND_2_4GHZ: 2.0, Technology.UWB: -33.0,
                          Technology.MMWAVE: -10.0},
    Compartment.PASSENGER: {Technology.BAND_2_4GHZ: 5.0, Technology.UWB: -33.0,
                            Technology.MMWAVE: -10.0},
}


class EmhMode(Enum):
    QUADRATIC = "quadratic"  # raw = k a^2
    OSCILLATOR = "oscillator"  # Duffing-type magnet-coil oscillator


@dataclass(frozen=True)
class EmhConfig:
    mass_kg: float = 0.05
    stiffness_linear_n_per_m: float = 790.0  # ~20 Hz with the default mass
    stiffness_cubic_n_per_m3: float = 2.0e6
    mech_damping_ns_per_m: float = 0.1
    em_damping_ns_per_m: float = 0.3
    processing_efficiency: float = 0.5
    mode: EmhMode = EmhMode.QUADRATIC
    k_mw_per_g2: float = 5.0  # 1 g RMS -> 2.5 mW useful
    input_axis: str = "magnitude"
    subtract_gravity: bool = True
    max_excursion_m: float = 0.05

    def __post_init__(self):
        for name in ("mass_kg", "stiffness_linear_n_per_m", "k_mw_per_g2",
                     "max_excursion_m"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        for name in ("stiffness_cubic_n_per_m3", "mech_damping_ns_per_m",
                     "em_damping_ns_per_m"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not 0.0 < self.processing_efficiency <= 1.0:
            raise ValueError("processing_efficiency must be in (0, 1]")

    @property
    def resonance_hz(self):
        return np.sqrt(self.stiffness_linear_n_per_m / self.mass_kg) / (2 * np.pi)


@dataclass(frozen=True)
class TegConfig:
    k_teg_mw_per_k2: float = 8.333e-3  # 40 K -> ~4 mW useful
    min_delta_t_k: float = 10.0
    processing_efficiency: float = 0.30

    def __post_init__(self):
        if self.k_teg_mw_per_k2 < 0:
            raise ValueError("k_teg_mw_per_k2 must be >= 0")
        if not 0.0 < self.processing_efficiency <= 1.0:
            raise ValueError("processing_efficiency must be in (0, 1]")


@dataclass(frozen=True, eq=False)
class PowerSeries:
    timestamps: np.ndarray
    power_mw: np.ndarray
    raw_mw: Optional[np.ndarray] = None
    source: str = ""

    def __post_init__(self):
        t = np.array(self.timestamps, dtype=float)
        p = np.array(self.power_mw, dtype=float)
        if t.shape != p.shape or t.ndim != 1:
            raise ValueError("timestamps and power_mw must be 1-D and equal length")
        if np.any(p < 0):
            raise ValueError("power must be non-negative")
        object.__setattr__(self, "timestamps", t)
        object.__setattr__(self, "power_mw", p)
        if self.raw_mw is not None:
            object.__setattr__(self, "raw_mw", np.array(self.raw_mw, dtype=float))

    def __len__(self):
        return len(self.power_mw)

    @property
    def summary(self):
        return summarize(self)


@dataclass(frozen=True)
class Summary:
    mean_mw: float
    peak_mw: float
    energy_mj: float

    def as_dict(self):
        return {"mean_mw": self.mean_mw, "peak_mw": self.peak_mw,
                "energy_mj": self.energy_mj}


def summarize(series):
    if len(series) == 0:
        raise EmptySeries("cannot summarize an empty power series")
    p = series.power_mw
    energy = float(np.trapezoid(p, series.timestamps)) if len(p) > 1 else 0.0
    return Summary(float(np.mean(p)), float(np.max(p)), energy)


def _check_uniform(t):
    t = np.asarray(t, dtype=float)
    if t.ndim != 1 or len(t) < 2:
        raise NonUniformTrace("need at least two timestamps")
    steps = np.diff(t)
    dt = (t[-1] - t[0]) / (len(t) - 1)
    if dt <= 0 or np.max(np.abs(steps - dt)) > UNIFORM_RTOL * dt:
        raise NonUniformTrace("timestamps are not uniformly spaced")
    return t, dt


def _drive(config, accel):
    """Return (timestamps, scalar drive in m/s^2, dt)."""
    if isinstance(accel, Trace):
        if accel.kind is not TraceKind.ACCEL:
            raise TypeError("emh_power needs an acceleration trace")
        a = vibration_input(accel, config.input_axis, config.subtract_gravity)
        return accel.timestamps, a, accel.dt
    t, a = accel
    t, dt = _check_uniform(t)
    a = np.asarray(a, dtype=float)
    if a.shape != t.shape:
        raise ValueError("drive and timestamps differ in length")
    return t, a, dt


def _midpoints(a):
    """Cubic (4-point Lagrange) estimate of the drive halfway between samples."""
    mid = 0.5 * (a[:-1] + a[1:])
    if len(a) >= 4:
        mid[1:-1] = (-a[:-3] + 9.0 * a[1:-2] + 9.0 * a[2:-1] - a[3:]) / 16.0
    return mid


def integrate_oscillator(config, a, dt):
    """Fixed-step RK4 for m z'' + c z' + k1 z + k3 z^3 = -m a(t).

    Returns the relative velocity at every sample. Starts at rest.
    """
    m = config.mass_kg
    c = config.mech_damping_ns_per_m + config.em_damping_ns_per_m
    k1 = config.stiffness_linear_n_per_m
    k3 = config.stiffness_cubic_n_per_m3
    bound = config.max_excursion_m
    a = np.asarray(a, dtype=float)
    mids = _midpoints(a).tolist()
    drive = a.tolist()
    v_out = np.zeros(len(a))
    z = v = 0.0
    h = dt
    cm, k1m, k3m = c / m, k1 / m, k3 / m

    def acc(z, v, f):
        return -f - cm * v - k1m * z - k3m * z * z * z

    for i in range(len(a) - 1):
        f0, fm, f1 = drive[i], mids[i], drive[i + 1]
        kz1 = v
        kv1 = acc(z, v, f0)
        kz2 = v + 0.5 * h * kv1
        kv2 = acc(z + 0.5 * h * kz1, kz2, fm)
        kz3 = v + 0.5 * h * kv2
        kv3 = acc(z + 0.5 * h * kz2, kz3, fm)
        kz4 = v + h * kv3
        kv4 = acc(z + h * kz3, kz4, f1)
        z += h / 6.0 * (kz1 + 2 * kz2 + 2 * kz3 + kz4)
        v += h / 6.0 * (kv1 + 2 * kv2 + 2 * kv3 + kv4)
        if not abs(z) <= bound:
            raise UnstableIntegration(
                f"displacement {z:.3g} m exceeds the {bound} m excursion bound "
                f"at t = {(i + 1) * h:.6g} s")
        v_out[i + 1] = v
    return v_out


def emh_power(config, accel):
    """Useful vibration-harvester power.

    ``accel`` is an acceleration Trace or a ``(timestamps, drive)`` pair with
    the drive already reduced to a scalar in m/s^2.
    """
    t, a, dt = _drive(config, accel)
    if config.mode is EmhMode.QUADRATIC:
        raw = config.k_mw_per_g2 * (a / G) ** 2
    else:
        v = integrate_oscillator(config, a, dt)
        raw = 1e3 * config.em_damping_ns_per_m * v ** 2
    return PowerSeries(t, config.processing_efficiency * raw, raw, "vibration")


def teg_power(config, temps):
    """Useful TEG power. ``temps`` is a Trace or ``(t, t_hot, t_amb)``."""
    if isinstance(temps, Trace):
        if temps.kind is not TraceKind.TEMP:
            raise TypeError("teg_power needs a temperature trace")
        t, delta = temps.timestamps, temps.delta_t
    else:
        t, hot, amb = temps
        t, _ = _check_uniform(t)
        delta = np.asarray(hot, dtype=float) - np.asarray(amb, dtype=float)
    raw = config.k_teg_mw_per_k2 * delta ** 2
    useful = np.where(delta >= config.min_delta_t_k,
                      config.processing_efficiency * raw, 0.0)
    return PowerSeries(t, useful, raw, "thermal")


def rf_power_series(curves, inputs_dbm, timestamps):
    """Constant RF harvest summed over all bands."""
    total = sum(rfeh_power(curves[tech], p) for tech, p in inputs_dbm.items())
    t = np.asarray(timestamps, dtype=float)
    return PowerSeries(t, np.full(len(t), float(total)), source="rf")


def combine_sources(series_list):
    series_list = list(series_list)
    if not series_list:
        raise EmptySeries("nothing to combine")
    t = series_list[0].timestamps
    for s in series_list[1:]:
        if s.timestamps.shape != t.shape or not np.array_equal(s.timestamps, t):
            raise TimestampMismatch(
                f"series {s.source or '?'} does not share timestamps with "
                f"{series_list[0].source or '?'}")
    total = np.sum([s.power_mw for s in series_list], axis=0)
    return PowerSeries(t, total, source="+".join(s.source for s in series_list if s.source))


SOURCES = ("rf", "vibration", "thermal")


def harvest_compartment(compartment, accel=None, temps=None, emh=None, teg=None,
                        curves=None, rf_inputs_dbm=None, sources=SOURCES,
                        rate_hz=None, timestamps=None):
    """Per-source PowerSeries for one compartment on a shared time grid.

    Traces are resampled to ``rate_hz`` (default: the acceleration rate, or
    the temperature rate when there is no acceleration trace).
    """
    compartment = Compartment.parse(compartment)
    emh = emh or EmhConfig()
    teg = teg or TegConfig()
    curves = curves or default_rfeh_curves()
    if rf_inputs_dbm is None:
        rf_inputs_dbm = DEFAULT_RF_INPUT_DBM[compartment]
    unknown = set(sources) - set(SOURCES)
    if unknown:
        raise ValueError(f"unknown source(s): {sorted(unknown)}")

    traces = {}
    if "vibration" in sources:
        if accel is None:
            raise ValueError("vibration source needs an acceleration trace")
        traces["vibration"] = accel
    if "thermal" in sources:
        if temps is None:
            raise ValueError("thermal source needs a temperature trace")
        traces["thermal"] = temps
    if traces:
        if rate_hz is None:
            rate_hz = traces.get("vibration", temps).sample_rate_hz
        names = list(traces)
        aligned = dict(zip(names, align([traces[k] for k in names], rate_hz)))
        grid = next(iter(aligned.values())).timestamps
    else:
        if timestamps is None:
            raise ValueError("RF-only harvesting needs a timestamp grid")
        grid = np.asarray(timestamps, dtype=float)

    out = {}
    for name in SOURCES:
        if name not in sources:
            continue
        if name == "rf":
            out[name] = rf_power_series(curves, rf_inputs_dbm, grid)
        elif name == "vibration":
            out[name] = emh_power(emh, aligned["vibration"])
        else:
            out[name] = teg_power(teg, aligned["thermal"])
    return out


def write_power_csv(series, path):
    with open(path, "w", newline="") as fh:
        fh.write("t_s,power_mw\n")
        for t, p in zip(series.timestamps.tolist(), series.power_mw.tolist()):
            fh.write(f"{t!r},{p!r}\n")


def summary_json(series):
    return json.dumps(summarize(series).as_dict(), indent=2)
