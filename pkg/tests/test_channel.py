import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivwsn import channel
from ivwsn.channel import (InterferenceScenario, PathLossModel, PenetrationTable,
                           interference_power, path_loss, received_power, sinr_db,
                           sweep_links, worst_case_sinr)
from ivwsn.errors import (DistanceBelowReference, MissingModel, MissingTableEntry,
                          SuppressionNotSupported)
from ivwsn.model import Compartment, Link, Technology, TechnologyProfile

E, C, P = Compartment.ENGINE, Compartment.CHASSIS, Compartment.PASSENGER
T24, UWB, MMW = Technology.BAND_2_4GHZ, Technology.UWB, Technology.MMWAVE


def model(pl0=40.0, n=2.0):
    return PathLossModel(UWB, E, True, pl0, n)


def linear_sinr(p_rx_dbm, noise_dbm, i_dbm=None):
    """Independent oracle: everything in milliwatts, one log at the end."""
    s = 10 ** (p_rx_dbm / 10)
    n = 10 ** (noise_dbm / 10)
    i = 0.0 if i_dbm is None else 10 ** (i_dbm / 10)
    return 10 * math.log10(s / (n + i))


def profile(eirp=0.0, noise=-84.0, suppress=False, tech=UWB):
    return TechnologyProfile(tech, eirp, 0.0, noise, 1000.0, nb_suppression=suppress)


# --- path loss -------------------------------------------------------------

def test_reference_distance_default_is_one_cm():
    assert model().reference_distance_m == 0.01


@pytest.mark.parametrize("pl0, n, d, expected", [
    (40, 2, 0.01, 40.0),
    (40, 2, 0.1, 60.0),
    (40, 0, 0.01, 40.0),
    (40, 0, 3.7, 40.0),
])
def test_path_loss_examples(pl0, n, d, expected):
    assert path_loss(model(pl0, n), d) == pytest.approx(expected, abs=1e-12)


def test_path_loss_below_reference():
    with pytest.raises(DistanceBelowReference):
        path_loss(model(), 0.005)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        model(n=-1)


@given(st.floats(0.0, 6.0), st.floats(0.01, 10.0), st.floats(0.01, 10.0))
def test_path_loss_non_decreasing(n, d1, d2):
    m = model(n=n)
    lo, hi = sorted((d1, d2))
    assert path_loss(m, lo) <= path_loss(m, hi) + 1e-12


# --- received power / interference -------------------------------------------

@pytest.mark.parametrize("eirp, loss, expected", [
    (52, 52, 0.0), (-11.3, 40, -51.3), (60, 0, 60.0)])
def test_received_power(eirp, loss, expected):
    assert received_power(profile(eirp), loss) == pytest.approx(expected, abs=1e-12)


def test_interference_power():
    pen0 = PenetrationTable({(T24, E): 0.0})
    pen30 = PenetrationTable({(T24, E): 30.0})
    assert interference_power(InterferenceScenario(52), pen0, T24, E) == 52
    assert interference_power(InterferenceScenario(52), pen30, T24, E) == 22
    assert interference_power(InterferenceScenario(52, suppressed=True), pen30, T24, E) is None


def test_interference_missing_entry():
    with pytest.raises(MissingTableEntry):
        interference_power(InterferenceScenario(52), PenetrationTable({}), T24, E)


def test_penetration_rejects_negative():
    with pytest.raises(ValueError):
        PenetrationTable({(T24, E): -1.0})


def test_default_penetration_ordering():
    pen = channel.default_penetration()
    for comp in Compartment:
        assert pen[T24, comp] <= 10 and pen[UWB, comp] <= 10
        assert pen[MMW, comp] >= 40
        assert pen[MMW, comp] > max(pen[T24, comp], pen[UWB, comp])


# --- SINR ------------------------------------------------------------------

def _sinr_case(p_rx, noise, i_dbm=None, suppressed=False):
    prof = profile(eirp=p_rx, noise=noise, suppress=True)
    link = Link("L", E, 0.01, True, measured_path_loss_db=0.0)
    pen = PenetrationTable({(UWB, E): 0.0})
    if i_dbm is None:
        scen = InterferenceScenario(0.0, suppressed=True)
    else:
        scen = InterferenceScenario(i_dbm, suppressed=suppressed)
    return worst_case_sinr(prof, link, model(), scen, pen)


def test_sinr_no_interference_equals_snr():
    assert _sinr_case(-50, -84) == pytest.approx(34.0, abs=1e-9)


def test_sinr_equal_power_interference():
    snr = _sinr_case(-50, -84)
    assert snr - _sinr_case(-50, -84, -84) == pytest.approx(10 * math.log10(2), abs=1e-9)


def test_sinr_worked_example():
    # frozen from a 30-digit mpmath evaluation of -50 - 10 log10(10^-8.4 + 10^-6)
    expected = 9.98274474971207
    got = _sinr_case(-50, -84, -60)
    assert got == pytest.approx(expected, abs=1e-9)
    assert got == pytest.approx(linear_sinr(-50, -84, -60), abs=1e-9)


@given(st.floats(-120, 60), st.floats(-110, -40), st.one_of(st.none(), st.floats(-120, 60)))
def test_sinr_linear_and_db_agree(p_rx, noise, i_dbm):
    assert sinr_db(p_rx, noise, i_dbm) == pytest.approx(linear_sinr(p_rx, noise, i_dbm), abs=1e-9)


@given(st.floats(-120, 60), st.floats(-110, -40), st.floats(-120, 60))
def test_interference_never_helps(p_rx, noise, i_dbm):
    assert sinr_db(p_rx, noise, i_dbm) <= sinr_db(p_rx, noise) + 1e-12


def test_measured_loss_overrides_model():
    prof = profile(eirp=0.0, suppress=True)
    scen = InterferenceScenario(0.0, suppressed=True)
    pen = PenetrationTable({(UWB, E): 0.0})
    measured = Link("m", E, 1.0, True, measured_path_loss_db=10.0)
    modeled = Link("m", E, 1.0, True)
    assert worst_case_sinr(prof, measured, model(), scen, pen) == pytest.approx(74.0)
    assert worst_case_sinr(prof, modeled, model(), scen, pen) == pytest.approx(84 - 80)


def test_suppression_requires_capability():
    prof = profile(suppress=False)
    with pytest.raises(SuppressionNotSupported):
        worst_case_sinr(prof, Link("a", E, 0.1, True), model(),
                        InterferenceScenario(0.0, suppressed=True),
                        PenetrationTable({(UWB, E): 0.0}))


def test_residual_penalty_mode():
    prof = profile(eirp=0.0, suppress=True)
    link = Link("a", E, 0.1, True)
    pen = PenetrationTable({(UWB, E): 0.0})
    clean = worst_case_sinr(prof, link, model(), InterferenceScenario(30.0, True), pen)
    penalised = worst_case_sinr(prof, link, model(),
                                InterferenceScenario(30.0, True, residual_penalty_db=3.0), pen)
    assert clean - penalised == pytest.approx(3.0)


def test_link_below_reference_distance():
    with pytest.raises(DistanceBelowReference):
        worst_case_sinr(profile(), Link("a", E, 0.001, True), model(),
                        InterferenceScenario(0.0), PenetrationTable({(UWB, E): 0.0}))


# --- sweep -----------------------------------------------------------------

def test_sweep_empty(cfg):
    assert sweep_links([], cfg.profiles, cfg.path_loss, cfg.scenarios(), cfg.penetration) == []


def test_sweep_cardinality_and_order(cfg):
    links = [Link("b", P, 0.5, False), Link("a", E, 0.3, True), Link("c", E, 0.1, True)]
    rows = sweep_links(links, cfg.profiles, cfg.path_loss, cfg.scenarios(), cfg.penetration)
    assert len(rows) == 9
    assert [r.link.id for r in rows[::3]] == ["c", "a", "b"]
    assert [r.tech for r in rows[:3]] == [T24, UWB, MMW]


def test_sweep_missing_model(cfg):
    models = dict(cfg.path_loss)
    del models[MMW, C, False]
    with pytest.raises(MissingModel, match="mmWave.*chassis.*False"):
        sweep_links([Link("x", C, 1.0, False)], cfg.profiles, models, cfg.scenarios(),
                    cfg.penetration)


def test_default_short_engine_los_prefers_mmwave(cfg):
    rows = sweep_links([Link("e", E, 0.1, True)], cfg.profiles, cfg.path_loss,
                       cfg.scenarios(), cfg.penetration)
    s = {r.tech: r.sinr_db for r in rows}
    assert s[MMW] > s[UWB]


def test_default_uwb_sinr_equals_snr(cfg):
    link = Link("e", C, 1.0, False)
    rows = sweep_links([link], cfg.profiles, cfg.path_loss, cfg.scenarios(), cfg.penetration)
    uwb = next(r for r in rows if r.tech is UWB)
    prof = cfg.profiles[UWB]
    snr = prof.eirp_dbm - path_loss(cfg.path_loss[UWB, C, False], 1.0) - prof.noise_floor_dbm
    assert uwb.sinr_db == pytest.approx(snr, abs=1e-9)


@settings(max_examples=50)
@given(st.lists(st.floats(0.01, 5.0), min_size=2, max_size=20), st.booleans())
def test_sinr_monotone_in_distance(cfg, distances, los):
    links = [Link(f"l{i}", P, d, los) for i, d in enumerate(distances)]
    rows = sweep_links(links, cfg.profiles, cfg.path_loss, cfg.scenarios(), cfg.penetration)
    for tech in Technology:
        sel = sorted((r.link.distance_m, r.sinr_db) for r in rows if r.tech is tech)
        sinrs = [s for _, s in sel]
        assert all(a >= b - 1e-9 for a, b in zip(sinrs, sinrs[1:]))


def test_synthetic_links_deterministic():
    a = channel.synthetic_links(seed=3)
    b = channel.synthetic_links(seed=3)
    assert a == b
    assert len(a) == 156 + 182 + 210
    assert all(l.distance_m >= 0.01 for l in a)
    assert channel.synthetic_links(seed=4) != a


def test_worst_link_prefers_longest_nlos(cfg):
    links = [Link("a", C, 2.0, True), Link("b", C, 1.5, False), Link("c", C, 0.5, False)]
    rows = sweep_links(links, cfg.profiles, cfg.path_loss, cfg.scenarios(), cfg.penetration)
    assert channel.worst_link(rows, C).id == "b"
    assert channel.worst_link(rows, C, "c").id == "c"
    assert channel.worst_link(rows, E) is None
