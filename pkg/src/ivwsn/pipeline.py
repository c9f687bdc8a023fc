"""End-to-end runs shared by the CLI and the demo scripts."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import channel, feasibility, harvest, traces
from .config import Config
from .model import COMPARTMENTS, Compartment


def sweep(cfg=None, links=None, seed=0, suppression=None):
    cfg = cfg or Config()
    if links is None:
        links = channel.synthetic_links(cfg.geometry, seed)
    return channel.sweep_links(links, cfg.profiles, cfg.path_loss,
                               cfg.scenarios(suppression), cfg.penetration)


@dataclass
class HarvestRun:
    compartment: Compartment
    series: dict                    # source name -> PowerSeries
    notes: list = field(default_factory=list)

    @property
    def combined(self):
        return harvest.combine_sources(self.series.values())


def harvest_one(cfg, compartment, scenario="city", duration_s=600.0, rate_hz=1000.0,
                seed=0, sources=harvest.SOURCES, accel=None, temps=None):
    """Harvest for one compartment, synthesising any trace not supplied."""
    compartment = Compartment.parse(compartment)
    # measured traces keep their own rate; synthetic ones use rate_hz
    align_rate = None if (accel is not None or temps is not None) else rate_hz
    if accel is not None:
        duration_s, rate_hz = len(accel) / accel.sample_rate_hz, accel.sample_rate_hz
    elif temps is not None:
        duration_s = len(temps) / temps.sample_rate_hz
    if "vibration" in sources and accel is None:
        accel = traces.synth_accel(scenario, compartment, duration_s, seed, rate_hz,
                                   cfg.vibration)
    if "thermal" in sources and temps is None:
        temps = traces.synth_temps(scenario, compartment, duration_s, rate_hz, cfg.thermal)
    grid = None
    if accel is None and temps is None:
        grid = np.arange(max(2, int(round(duration_s * rate_hz)))) / rate_hz
    series = harvest.harvest_compartment(
        compartment, accel, temps, cfg.emh, cfg.teg, cfg.rfeh,
        cfg.rf_input_dbm[compartment], sources, rate_hz=align_rate, timestamps=grid)
    notes = []
    th = series.get("thermal")
    if th is not None and th.summary.peak_mw == 0.0:
        notes.append(f"thermal: temperature difference stays below the "
                     f"{cfg.teg.min_delta_t_k:g} K minimum; thermal harvesting is not "
                     f"feasible in the {compartment.value} compartment")
    return HarvestRun(compartment, series, notes)


def harvest_all(cfg=None, compartments=COMPARTMENTS, **kwargs):
    cfg = cfg or Config()
    with ThreadPoolExecutor() as pool:
        runs = pool.map(lambda c: harvest_one(cfg, c, **kwargs), compartments)
        return {run.compartment: run for run in runs}


def feasibility_report(cfg=None, nodes=None, sinr_rows=None, runs=None, seed=0, **kwargs):
    """Sweep, harvest and judge every node. Extra kwargs go to ``harvest_one``."""
    cfg = cfg or Config()
    nodes = list(cfg.requirements) if nodes is None else list(nodes)
    if sinr_rows is None:
        sinr_rows = sweep(cfg, seed=seed)
    needed = tuple(dict.fromkeys(n.compartment for n in nodes))
    if runs is None:
        runs = harvest_all(cfg, needed, seed=seed, **kwargs)
    supplies = {c: runs[c].series for c in needed}
    return feasibility.build_report(nodes, sinr_rows, supplies, cfg.profiles,
                                    cfg.sinr_thresholds_db, cfg.power_margin,
                                    cfg.strict_power)
