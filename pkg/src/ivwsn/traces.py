"""Measurement traces: CSV ingestion, resampling and synthetic driving data."""

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import signal

from .errors import ExcessiveJitter, NonMonotonicTime, ParseError, TimestampMismatch
from .model import Compartment
from .units import G

TEMP_BOUNDS_C = (-60.0, 300.0)
MAX_JITTER = 0.01  # fraction of the sampling interval


class TraceKind(Enum):
    ACCEL = "accel"  # three axes, m/s^2
    TEMP = "temp"    # (T_hot, T_ambient), degC

    @property
    def columns(self):
        return _COLUMNS[self]


_COLUMNS = {
    TraceKind.ACCEL: ("t_s", "ax", "ay", "az"),
    TraceKind.TEMP: ("t_s", "t_hot_c", "t_amb_c"),
}


@dataclass(frozen=True, eq=False)
class Trace:
    """Uniformly sampled multichannel time series.

    Sample ``i`` is taken at ``t0_s + i / sample_rate_hz``.
    """
    kind: TraceKind
    sample_rate_hz: float
    samples: np.ndarray
    compartment: Compartment
    label: str = ""
    t0_s: float = 0.0

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        width = len(self.kind.columns) - 1
        if samples.ndim != 2 or samples.shape[1] != width:
            raise ValueError(f"{self.kind.value} trace needs shape (n, {width}), "
                             f"got {samples.shape}")
        if len(samples) < 2:
            raise ValueError("a trace needs at least 2 samples")
        if not self.sample_rate_hz > 0:
            raise ValueError("sample_rate_hz must be > 0")
        if not np.all(np.isfinite(samples)):
            raise ValueError("trace contains non-finite samples")
        if self.kind is TraceKind.TEMP:
            lo, hi = TEMP_BOUNDS_C
            if samples.min() < lo or samples.max() > hi:
                raise ValueError(f"temperature outside [{lo}, {hi}] degC")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return len(self.samples)

    @property
    def dt(self):
        return 1.0 / self.sample_rate_hz

    @property
    def timestamps(self):
        return self.t0_s + np.arange(len(self.samples)) / self.sample_rate_hz

    @property
    def duration_s(self):
        return (len(self.samples) - 1) / self.sample_rate_hz

    @property
    def delta_t(self):
        """T_hot - T_ambient for temperature traces."""
        if self.kind is not TraceKind.TEMP:
            raise TypeError("delta_t is only defined for temperature traces")
        return self.samples[:, 0] - self.samples[:, 1]

    def with_samples(self, samples, sample_rate_hz=None):
        return Trace(self.kind, sample_rate_hz or self.sample_rate_hz, samples,
                     self.compartment, self.label, self.t0_s)


def _snap_rate(t):
    rate = (len(t) - 1) / (t[-1] - t[0])
    # 9 significant digits makes the estimate stable under write/parse cycles
    return float(f"{rate:.9g}")


def from_timestamps(t, samples, kind, compartment, label=""):
    """Build a Trace from explicit timestamps, snapping them to a uniform grid."""
    t = np.asarray(t, dtype=float)
    if len(t) < 2:
        raise ValueError("a trace needs at least 2 samples")
    steps = np.diff(t)
    if np.any(steps <= 0):
        i = int(np.argmax(steps <= 0)) + 1
        raise NonMonotonicTime(f"timestamps not strictly increasing at sample {i}")
    rate = _snap_rate(t)
    grid = t[0] + np.arange(len(t)) / rate
    worst = float(np.max(np.abs(t - grid))) * rate
    if worst >= MAX_JITTER:
        raise ExcessiveJitter(f"timestamp jitter {worst:.3%} of the sampling "
                              f"interval exceeds {MAX_JITTER:.0%}")
    return Trace(kind, rate, samples, compartment, label, float(t[0]))


def parse_trace(path, kind, compartment, label=None):
    """Read a trace CSV (``t_s,ax,ay,az`` or ``t_s,t_hot_c,t_amb_c``)."""
    kind = TraceKind(kind)
    compartment = Compartment.parse(compartment)
    expected = kind.columns
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError("empty file", path=path) from None
        missing = [c for c in expected if c not in header]
        if missing:
            raise ParseError(f"missing column(s) {', '.join(missing)}; expected header "
                             f"{','.join(expected)}", row=1, path=path)
        if tuple(header) != expected:
            raise ParseError(f"unexpected header {','.join(header)}; expected "
                             f"{','.join(expected)}", row=1, path=path)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(expected):
                raise ParseError(f"expected {len(expected)} fields, got {len(row)}",
                                 row=lineno, path=path)
            try:
                values = [float(c) for c in row]
            except ValueError:
                raise ParseError(f"non-numeric value in {row!r}", row=lineno,
                                 path=path) from None
            if not all(math.isfinite(v) for v in values):
                raise ParseError("non-finite value", row=lineno, path=path)
            if kind is TraceKind.TEMP:
                lo, hi = TEMP_BOUNDS_C
                if not all(lo <= v <= hi for v in values[1:]):
                    raise ParseError(f"temperature outside [{lo}, {hi}] degC",
                                     row=lineno, path=path)
            rows.append(values)
    if len(rows) < 2:
        raise ParseError("a trace needs at least 2 data rows", path=path)
    data = np.array(rows)
    if label is None:
        label = str(path)
    return from_timestamps(data[:, 0], data[:, 1:], kind, compartment, label)


def write_trace(trace, path):
    """Write a trace in the same CSV schema ``parse_trace`` reads."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(trace.kind.columns) + "\n")
        t = trace.timestamps
        for ti, row in zip(t.tolist(), trace.samples.tolist()):
            fh.write(",".join(repr(v) for v in (ti, *row)) + "\n")


def resample(trace, target_hz):
    """Linearly interpolate onto a uniform grid at ``target_hz``."""
    if not target_hz > 0:
        raise ValueError("target_hz must be > 0")
    if target_hz == trace.sample_rate_hz:
        return trace.with_samples(trace.samples.copy())
    n = int(math.floor(trace.duration_s * target_hz + 1e-9)) + 1
    if n < 2:
        raise ValueError(f"{target_hz} Hz leaves fewer than two samples over "
                         f"{trace.duration_s} s")
    t_new = np.arange(n) / target_hz
    t_old = np.arange(len(trace)) / trace.sample_rate_hz
    cols = [np.interp(t_new, t_old, trace.samples[:, j])
            for j in range(trace.samples.shape[1])]
    return trace.with_samples(np.column_stack(cols), sample_rate_hz=target_hz)


def align(traces, rate_hz):
    """Resample traces to one rate and trim them to a common length."""
    t0 = {tr.t0_s for tr in traces}
    if len(t0) > 1:
        raise TimestampMismatch(f"traces start at different times: {sorted(t0)}")
    out = [resample(tr, rate_hz) for tr in traces]
    n = min(len(tr) for tr in out)
    return [tr.with_samples(tr.samples[:n]) for tr in out]


def vibration_input(trace, axis="magnitude", subtract_gravity=True):
    """Reduce an acceleration trace to the scalar harvester drive in m/s^2."""
    if trace.kind is not TraceKind.ACCEL:
        raise TypeError("vibration input requires an acceleration trace")
    if axis == "magnitude":
        a = np.linalg.norm(trace.samples, axis=1)
        return a - G if subtract_gravity else a
    try:
        j = "xyz".index(axis)
    except ValueError:
        raise ValueError(f"axis must be 'magnitude', 'x', 'y' or 'z', not {axis!r}") from None
    # gravity is assumed to sit on z
    a = trace.samples[:, j]
    return a - G if (subtract_gravity and j == 2) else a


# Synthetic scenario parameters are illustrative, not measured.

@dataclass(frozen=True)
class Scenario:
    engine_rpm: float
    vibration_scale: float
    thermal_scale: float


SCENARIOS = {
    "idle": Scenario(800.0, 0.6, 0.85),
    "city": Scenario(2000.0, 1.0, 1.0),
    "highway": Scenario(2800.0, 1.2, 1.1),
}


@dataclass(frozen=True)
class VibrationProfile:
    rms_g: float            # dynamic RMS for the "city" scenario
    harmonic_share: float   # fraction of power in engine-order harmonics
    noise_band_hz: tuple = (5.0, 150.0)


@dataclass(frozen=True)
class ThermalProfile:
    ambient_c: float
    steady_delta_c: float
    time_constant_s: float


# RMS values calibrated so the default harvester gives ~2.58 / 1.13 / 0.17 mW
# mean useful power for the city scenario.
DEFAULT_VIBRATION = {
    Compartment.ENGINE: VibrationProfile(1.27, 0.7),
    Compartment.CHASSIS: VibrationProfile(0.81, 0.3),
    Compartment.PASSENGER: VibrationProfile(0.26, 0.3),
}

DEFAULT_THERMAL = {
    Compartment.ENGINE: ThermalProfile(35.0, 40.0, 60.0),
    Compartment.CHASSIS: ThermalProfile(25.0, 16.0, 90.0),
    Compartment.PASSENGER: ThermalProfile(22.0, 2.0, 120.0),
}

# (engine order, relative amplitude) for a four-stroke four-cylinder engine
_ORDERS = ((0.5, 0.25), (1.0, 0.35), (2.0, 1.0), (4.0, 0.4))


def _scenario(name):
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}") from None


def _unit_rms(x):
    rms = np.sqrt(np.mean(x ** 2))
    return x / rms if rms > 0 else x


def _band_noise(rng, n, fs, band):
    noise = rng.standard_normal(n)
    lo, hi = band
    hi = min(hi, 0.45 * fs)
    if lo < hi:
        sos = signal.butter(4, [lo, hi], btype="bandpass", fs=fs, output="sos")
        noise = signal.sosfilt(sos, noise)
    return _unit_rms(noise)


def synth_accel(scenario, compartment, duration_s, seed=0, sample_rate_hz=1000.0,
                profiles=None):
    """Synthetic gravity-inclusive three-axis acceleration.

    Engine-order sinusoids plus band-limited road noise, scaled so the
    vertical dynamic component has the compartment's RMS for the scenario.
    """
    if not duration_s > 0:
        raise ValueError("duration_s must be > 0")
    sc = _scenario(scenario)
    compartment = Compartment.parse(compartment)
    prof = (profiles or DEFAULT_VIBRATION)[compartment]
    fs = float(sample_rate_hz)
    n = max(2, int(round(duration_s * fs)))
    t = np.arange(n) / fs
    rng = np.random.default_rng(seed)

    f_rot = sc.engine_rpm / 60.0
    harmonics = np.zeros(n)
    for order, amp in _ORDERS:
        f = order * f_rot
        phase = rng.uniform(0, 2 * np.pi)
        if f < 0.5 * fs:
            harmonics += amp * np.sin(2 * np.pi * f * t + phase)
    harmonics = _unit_rms(harmonics)

    def dynamic():
        road = _band_noise(rng, n, fs, prof.noise_band_hz)
        mix = (np.sqrt(prof.harmonic_share) * harmonics
               + np.sqrt(1.0 - prof.harmonic_share) * road)
        return _unit_rms(mix)

    rms = prof.rms_g * sc.vibration_scale * G
    az = G + rms * dynamic()
    ax = 0.3 * rms * dynamic()
    ay = 0.3 * rms * dynamic()
    return Trace(TraceKind.ACCEL, fs, np.column_stack([ax, ay, az]), compartment,
                 f"synthetic {scenario} {compartment.value} accel (seed {seed})")


def synth_temps(scenario, compartment, duration_s, sample_rate_hz=1.0, profiles=None):
    """First-order warm-up of the hot side from a cold start (delta T = 0)."""
    if not duration_s > 0:
        raise ValueError("duration_s must be > 0")
    sc = _scenario(scenario)
    compartment = Compartment.parse(compartment)
    prof = (profiles or DEFAULT_THERMAL)[compartment]
    fs = float(sample_rate_hz)
    n = max(2, int(round(duration_s * fs)))
    t = np.arange(n) / fs
    steady = prof.steady_delta_c * sc.thermal_scale
    delta = steady * -np.expm1(-t / prof.time_constant_s)
    amb = np.full(n, prof.ambient_c)
    return Trace(TraceKind.TEMP, fs, np.column_stack([amb + delta, amb]), compartment,
                 f"synthetic {scenario} {compartment.value} temperatures")
