"""Feasibility analysis for energy-harvesting intra-vehicular wireless sensor networks.

Link budgets and worst-case SINR for 2.4 GHz, UWB and mmWave radios in the
engine, chassis and passenger compartments; RF, vibration and thermal
harvester models; and per-node feasibility verdicts.
"""

from .channel import (InterferenceScenario, PathLossModel, PenetrationTable, SinrRow,
                      interference_power, path_loss, received_power, sweep_links,
                      worst_case_sinr)
from .config import Config, load_config
from .feasibility import (DutyCycleModel, FeasibilityReport, average_power, build_report,
                          comm_feasible, power_feasible)
from .harvest import (EmhConfig, EmhMode, PowerSeries, RfehCurve, TegConfig,
                      combine_sources, emh_power, rfeh_power, summarize, teg_power)
from .model import (Compartment, Domain, Link, NodeRequirement, Security, Technology,
                    TechnologyProfile, default_profiles, requirement_registry)
from .traces import Trace, TraceKind, parse_trace, resample, synth_accel, synth_temps

__version__ = "0.1.0"

__all__ = [
    "InterferenceScenario", "PathLossModel", "PenetrationTable", "SinrRow",
    "interference_power", "path_loss", "received_power", "sweep_links", "worst_case_sinr",
    "Config", "load_config",
    "DutyCycleModel", "FeasibilityReport", "average_power", "build_report",
    "comm_feasible", "power_feasible",
    "EmhConfig", "EmhMode", "PowerSeries", "RfehCurve", "TegConfig",
    "combine_sources", "emh_power", "rfeh_power", "summarize", "teg_power",
    "Compartment", "Domain", "Link", "NodeRequirement", "Security", "Technology",
    "TechnologyProfile", "default_profiles", "requirement_registry",
    "Trace", "TraceKind", "parse_trace", "resample", "synth_accel", "synth_temps",
]
