import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from ivwsn.errors import EmptySeries, NonUniformTrace, TimestampMismatch, UnstableIntegration
from ivwsn.harvest import (EmhConfig, EmhMode, PowerSeries, RfehCurve, TegConfig,
                           combine_sources, default_rfeh_curves, emh_power,
                           harvest_compartment, rf_input_from_link, rfeh_power, summarize,
                           teg_power, write_power_csv)
from ivwsn.model import Compartment, Technology, default_profiles
from ivwsn.traces import Trace, TraceKind, synth_accel, synth_temps
from ivwsn.units import G

T24, UWB, MMW = Technology.BAND_2_4GHZ, Technology.UWB, Technology.MMWAVE
CURVES = default_rfeh_curves()


def series(values, dt=1.0):
    values = np.asarray(values, dtype=float)
    return PowerSeries(np.arange(len(values)) * dt, values)


def trapezoid_loop(t, p):
    """Plain-loop trapezoid rule; deliberately not numpy."""
    total = 0.0
    for i in range(1, len(t)):
        total += 0.5 * (p[i] + p[i - 1]) * (t[i] - t[i - 1])
    return total


# --- RF -------------------------------------------------------------------

def test_rfeh_defaults():
    c = CURVES[T24]
    assert (c.sensitivity_dbm, c.window_dbm, c.efficiency_range) == (-20, (-10, 18), (0.115, 0.40))
    c = CURVES[UWB]
    assert (c.sensitivity_dbm, c.window_dbm, c.efficiency_range) == (-36, (-36, -25), (0.05, 0.10))
    assert CURVES[MMW].sensitivity_dbm == 2 and CURVES[MMW].efficiency_range[1] == 0.12


def test_rfeh_examples():
    assert rfeh_power(CURVES[T24], -30.0) == 0.0
    # 0.40 * 10**1.8 evaluated at 30 digits
    assert rfeh_power(CURVES[T24], 18.0) == pytest.approx(25.2382937792077, rel=1e-12)
    assert rfeh_power(CURVES[UWB], -36.0) == pytest.approx(1.25594321575479e-5, rel=1e-12)


def test_rfeh_interpolates_inside_window():
    # midpoint of [-10, 18] dBm -> midpoint efficiency
    assert CURVES[T24].efficiency(4.0) == pytest.approx((0.115 + 0.40) / 2)
    assert CURVES[T24].efficiency(30.0) == pytest.approx(0.40)
    assert CURVES[T24].efficiency(-15.0) == pytest.approx(0.115)


def test_mmwave_flat_efficiency():
    assert rfeh_power(CURVES[MMW], 1.99) == 0.0
    assert rfeh_power(CURVES[MMW], 2.0) == pytest.approx(0.12 * 10 ** 0.2)
    assert rfeh_power(CURVES[MMW], 10.0) == pytest.approx(0.12 * 10.0)


@pytest.mark.parametrize("tech", list(Technology))
@given(p1=st.floats(-80, 40), p2=st.floats(-80, 40))
def test_rfeh_monotone(tech, p1, p2):
    lo, hi = sorted((p1, p2))
    assert rfeh_power(CURVES[tech], lo) <= rfeh_power(CURVES[tech], hi)


@pytest.mark.parametrize("tech", list(Technology))
@given(p=st.floats(-80, 40))
def test_rfeh_zero_exactly_below_sensitivity(tech, p):
    out = rfeh_power(CURVES[tech], p)
    if p < CURVES[tech].sensitivity_dbm:
        assert out == 0.0
    else:
        assert out > 0.0


def test_rfeh_vectorised():
    out = rfeh_power(CURVES[T24], np.array([-30.0, 18.0]))
    assert out.shape == (2,) and out[0] == 0.0


def test_rfeh_curve_validation():
    with pytest.raises(ValueError):
        RfehCurve(T24, -20, (-10, 18), (0.5, 0.4))
    with pytest.raises(ValueError):
        RfehCurve(T24, -20, (-10, 18), (0.1, 1.2))


def test_rf_input_drops_tx_antenna_gain():
    p = default_profiles()[T24]
    assert rf_input_from_link(p, 20.0) == pytest.approx(52 - 30 - 20)


# --- vibration -------------------------------------------------------------

def test_emh_zero_acceleration():
    t = np.arange(100) / 100
    for mode in EmhMode:
        out = emh_power(EmhConfig(mode=mode), (t, np.zeros(100)))
        assert np.all(out.power_mw == 0.0)


def test_emh_quadratic_amplitude_law():
    t = np.arange(5000) / 1000.0
    a = 3.0 * np.sin(2 * np.pi * 13 * t) + np.cos(2 * np.pi * 70 * t)
    cfg = EmhConfig()
    m1 = summarize(emh_power(cfg, (t, a))).mean_mw
    m2 = summarize(emh_power(cfg, (t, 2 * a))).mean_mw
    assert m2 / m1 == pytest.approx(4.0, rel=1e-12)


def test_emh_quadratic_calibration():
    # 1 g RMS -> k * 1 g^2 * 50 %
    t = np.arange(1000) / 1000.0
    a = np.full(1000, G)
    assert summarize(emh_power(EmhConfig(), (t, a))).mean_mw == pytest.approx(2.5)


def test_emh_useful_below_raw_and_non_negative():
    acc = synth_accel("highway", Compartment.ENGINE, 5.0, seed=2)
    for mode in EmhMode:
        out = emh_power(EmhConfig(mode=mode), acc)
        assert np.all(out.power_mw >= 0)
        assert np.all(out.power_mw <= out.raw_mw)


def test_emh_non_uniform_timestamps():
    t = np.array([0.0, 0.1, 0.25, 0.3])
    with pytest.raises(NonUniformTrace):
        emh_power(EmhConfig(), (t, np.zeros(4)))


def test_emh_rejects_temperature_trace():
    with pytest.raises(TypeError):
        emh_power(EmhConfig(), synth_temps("city", Compartment.ENGINE, 10.0))


def test_emh_config_validation():
    with pytest.raises(ValueError):
        EmhConfig(mass_kg=0)
    with pytest.raises(ValueError):
        EmhConfig(processing_efficiency=1.5)


def _sine(freq, amp=0.5, fs=1000.0, duration=2.0):
    t = np.arange(int(duration * fs)) / fs
    return t, amp * np.sin(2 * np.pi * freq * t)


def test_oscillator_without_em_damping_outputs_nothing():
    cfg = EmhConfig(mode=EmhMode.OSCILLATOR, em_damping_ns_per_m=0.0)
    out = emh_power(cfg, _sine(cfg.resonance_hz, amp=2.0))
    assert np.all(out.power_mw == 0.0)


def reference_oscillator_power(cfg, freq, amp, t):
    """Adaptive high-order integration with the analytic drive."""
    c = cfg.mech_damping_ns_per_m + cfg.em_damping_ns_per_m

    def rhs(tt, y):
        z, v = y
        force = c * v + cfg.stiffness_linear_n_per_m * z + cfg.stiffness_cubic_n_per_m3 * z ** 3
        return [v, -amp * np.sin(2 * np.pi * freq * tt) - force / cfg.mass_kg]

    sol = solve_ivp(rhs, (0.0, t[-1]), [0.0, 0.0], t_eval=t, method="DOP853",
                    rtol=1e-11, atol=1e-14)
    return np.mean(cfg.processing_efficiency * 1e3 * cfg.em_damping_ns_per_m * sol.y[1] ** 2)


@pytest.mark.parametrize("ratio", [1.0, 3.0])
def test_oscillator_matches_reference_integrator(ratio):
    cfg = EmhConfig(mode=EmhMode.OSCILLATOR)
    t, a = _sine(ratio * cfg.resonance_hz)
    ours = summarize(emh_power(cfg, (t, a))).mean_mw
    ref = reference_oscillator_power(cfg, ratio * cfg.resonance_hz, 0.5, t)
    assert ours == pytest.approx(ref, rel=0.02)


def test_oscillator_resonance_beats_off_resonance():
    cfg = EmhConfig(mode=EmhMode.OSCILLATOR)
    on = summarize(emh_power(cfg, _sine(cfg.resonance_hz))).mean_mw
    off = summarize(emh_power(cfg, _sine(3 * cfg.resonance_hz))).mean_mw
    assert on > off


def test_oscillator_excursion_bound():
    cfg = EmhConfig(mode=EmhMode.OSCILLATOR, max_excursion_m=1e-5)
    with pytest.raises(UnstableIntegration):
        emh_power(cfg, _sine(cfg.resonance_hz, amp=5.0))


# --- thermal ---------------------------------------------------------------

def temps(delta, n=10, ambient=20.0):
    hot = ambient + np.broadcast_to(np.asarray(delta, float), (n,))
    return Trace(TraceKind.TEMP, 1.0, np.column_stack([hot, np.full(n, ambient)]),
                 Compartment.ENGINE)


def test_teg_defaults():
    cfg = TegConfig()
    assert cfg.min_delta_t_k == 10 and cfg.processing_efficiency == 0.30


def test_teg_below_threshold_is_zero():
    assert np.all(teg_power(TegConfig(), temps(2.0)).power_mw == 0.0)


def test_teg_engine_calibration():
    out = teg_power(TegConfig(), temps(40.0))
    assert out.power_mw[0] == pytest.approx(0.30 * 8.333e-3 * 1600)
    assert out.power_mw[0] == pytest.approx(4.0, abs=0.01)


@given(st.floats(10.0, 120.0))
def test_teg_quadratic(delta):
    cfg = TegConfig()
    p1 = teg_power(cfg, temps(delta, n=2)).power_mw[0]
    p2 = teg_power(cfg, temps(2 * delta, n=2)).power_mw[0]
    assert p2 / p1 == pytest.approx(4.0, rel=1e-9)


@given(st.floats(-40.0, 40.0))
def test_teg_common_offset_invariance(offset):
    base = synth_temps("city", Compartment.ENGINE, 200.0)
    shifted = base.with_samples(base.samples + offset)
    cfg = TegConfig()
    assert np.allclose(teg_power(cfg, base).power_mw, teg_power(cfg, shifted).power_mw,
                       rtol=1e-9, atol=1e-12)


def test_teg_tuple_input_and_uniformity():
    t = np.arange(4.0)
    out = teg_power(TegConfig(), (t, np.full(4, 60.0), np.full(4, 20.0)))
    assert out.power_mw[0] > 0
    with pytest.raises(NonUniformTrace):
        teg_power(TegConfig(), (np.array([0, 1, 3.0]), np.full(3, 60.0), np.full(3, 20.0)))


# --- accounting ------------------------------------------------------------

def test_summarize_constant():
    s = summarize(series(np.full(11, 5.0)))
    assert (s.mean_mw, s.peak_mw) == (5.0, 5.0)
    assert s.energy_mj == pytest.approx(50.0)


def test_summarize_two_samples():
    s = summarize(series([0.0, 10.0]))
    assert (s.mean_mw, s.peak_mw, s.energy_mj) == (5.0, 10.0, 5.0)


def test_summarize_spike():
    assert summarize(series([0, 0, 7.5, 0])).peak_mw == 7.5


def test_summarize_empty():
    with pytest.raises(EmptySeries):
        summarize(series([]))


@given(st.lists(st.floats(0, 1e3), min_size=2, max_size=60), st.floats(1e-3, 10.0))
def test_energy_matches_trapezoid_loop(values, dt):
    s = series(values, dt)
    assert summarize(s).energy_mj == pytest.approx(trapezoid_loop(s.timestamps, s.power_mw),
                                                   rel=1e-9, abs=1e-12)


def test_power_series_rejects_negative():
    with pytest.raises(ValueError):
        series([1.0, -0.1])


def test_combine_identity_and_sum():
    a = series(np.full(5, 1.0))
    b = series(np.full(5, 0.5))
    assert np.array_equal(combine_sources([a]).power_mw, a.power_mw)
    both = combine_sources([a, b])
    assert np.all(both.power_mw == 1.5)


@given(st.lists(st.floats(0, 100), min_size=3, max_size=3),
       st.lists(st.floats(0, 100), min_size=3, max_size=3))
def test_combined_mean_is_sum_of_means(x, y):
    a, b = series(x), series(y)
    total = summarize(combine_sources([a, b])).mean_mw
    assert total == pytest.approx(summarize(a).mean_mw + summarize(b).mean_mw, abs=1e-9)


def test_combine_timestamp_mismatch():
    with pytest.raises(TimestampMismatch):
        combine_sources([series([1, 2, 3]), series([1, 2, 3], dt=2.0)])
    with pytest.raises(TimestampMismatch):
        combine_sources([series([1, 2, 3]), series([1, 2])])


def test_harvest_compartment_shares_grid():
    acc = synth_accel("city", Compartment.CHASSIS, 20.0, sample_rate_hz=200.0)
    tmp = synth_temps("city", Compartment.CHASSIS, 20.0, sample_rate_hz=1.0)
    out = harvest_compartment(Compartment.CHASSIS, acc, tmp)
    assert list(out) == ["rf", "vibration", "thermal"]
    grids = [s.timestamps for s in out.values()]
    assert all(np.array_equal(grids[0], g) for g in grids)
    combine_sources(out.values())


def test_harvest_compartment_rf_only_needs_grid():
    out = harvest_compartment(Compartment.ENGINE, sources=("rf",), timestamps=[0.0, 1.0])
    assert list(out) == ["rf"]
    with pytest.raises(ValueError):
        harvest_compartment(Compartment.ENGINE, sources=("rf",))


def test_write_power_csv(tmp_path):
    write_power_csv(series([0.5, 1.25]), tmp_path / "p.csv")
    assert (tmp_path / "p.csv").read_text() == "t_s,power_mw\n0.0,0.5\n1.0,1.25\n"
