"""Per-node verdicts combining harvested supply and link quality."""

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import worst_link
from .errors import NoLinksForCompartment
from .harvest import combine_sources, summarize
from .model import TECHNOLOGIES, Security, Technology

# Policy defaults, not measured values.
DEFAULT_SINR_THRESHOLDS_DB = {Security.HIGH: 10.0, Security.LOW: 3.0}


@dataclass(frozen=True)
class DutyCycleModel:
    active_power_mw: float
    sleep_power_mw: float
    duty: float

    def __post_init__(self):
        if not 0.0 <= self.duty <= 1.0:
            raise ValueError("duty must be in [0, 1]")
        if self.sleep_power_mw > self.active_power_mw:
            raise ValueError("sleep power exceeds active power")


def average_power(model):
    return model.duty * model.active_power_mw + (1.0 - model.duty) * model.sleep_power_mw


@dataclass(frozen=True)
class PowerVerdict:
    supply_mean_mw: float
    demand_mw: float
    feasible: bool
    contributing_sources: tuple = ()


@dataclass(frozen=True)
class TechVerdict:
    worst_sinr_db: float
    rate_ok: bool
    sinr_ok: bool


@dataclass(frozen=True)
class FeasibilityReport:
    node: object
    compartment: object
    power_verdict: PowerVerdict
    comm_verdict: dict
    chosen_tech: Optional[Technology]
    worst_link_id: str
    sinr_threshold_db: float
    overall: bool

    def as_dict(self):
        node = self.node
        return {
            "node": {
                "name": node.label,
                "domain": node.domain.value,
                "compartment": node.compartment.value,
                "power_mw": node.power_mw,
                "rate_kbps": list(node.rate_kbps),
                "security_reliability": node.security_reliability.value,
            },
            "compartment": self.compartment.value,
            "power_verdict": {
                "supply_mean_mw": self.power_verdict.supply_mean_mw,
                "demand_mw": self.power_verdict.demand_mw,
                "feasible": self.power_verdict.feasible,
                "contributing_sources": list(self.power_verdict.contributing_sources),
            },
            "comm_verdict": {
                tech.value: {"worst_sinr_db": v.worst_sinr_db, "rate_ok": v.rate_ok,
                             "sinr_ok": v.sinr_ok}
                for tech, v in self.comm_verdict.items()
            },
            "worst_link_id": self.worst_link_id,
            "sinr_threshold_db": self.sinr_threshold_db,
            "sinr_threshold_is_policy": True,
            "chosen_tech": self.chosen_tech.value if self.chosen_tech else None,
            "overall": self.overall,
        }


def power_feasible(demand_mw, supply, margin=0.0, strict=False, sources=()):
    """Compare demand against a supply PowerSeries.

    By default the mean supply is used (storage smooths peaks); with
    ``strict`` the minimum instantaneous supply must cover the demand.
    """
    if margin < 0:
        raise ValueError("margin must be >= 0")
    mean = summarize(supply).mean_mw
    available = float(np.min(supply.power_mw)) if strict else mean
    feasible = available >= demand_mw * (1.0 + margin)
    return PowerVerdict(mean, float(demand_mw), bool(feasible), tuple(sources))


def comm_feasible(node, sinr_table, profiles, thresholds=None):
    """Per-technology verdicts on the node's worst link, plus the chosen band.

    The chosen band has the highest worst-link SINR among bands meeting the
    rate requirement. Returns ``(verdicts, chosen_tech, link)``.
    """
    thresholds = thresholds or DEFAULT_SINR_THRESHOLDS_DB
    link = worst_link(sinr_table, node.compartment, node.link_id)
    if link is None:
        what = f"link {node.link_id!r}" if node.link_id else "links"
        raise NoLinksForCompartment(
            f"no {what} in the {node.compartment.value} compartment for node {node.label}")
    threshold = thresholds[node.security_reliability]
    sinrs = {r.tech: r.sinr_db for r in sinr_table if r.link.id == link.id}
    verdicts = {}
    for tech in TECHNOLOGIES:
        if tech not in sinrs:
            continue
        verdicts[tech] = TechVerdict(
            worst_sinr_db=sinrs[tech],
            rate_ok=profiles[tech].max_rate_kbps >= node.rate_max_kbps,
            sinr_ok=sinrs[tech] >= threshold,
        )
    candidates = [t for t, v in verdicts.items() if v.rate_ok]
    chosen = max(candidates, key=lambda t: verdicts[t].worst_sinr_db) if candidates else None
    return verdicts, chosen, link


def build_report(nodes, sinr_table, supplies, profiles, thresholds=None, margin=0.0,
                 strict=False):
    """One FeasibilityReport per node, in input order.

    ``supplies`` maps each compartment to ``{source name: PowerSeries}``.
    """
    thresholds = thresholds or DEFAULT_SINR_THRESHOLDS_DB
    combined = {}
    reports = []
    for node in nodes:
        comp = node.compartment
        if comp not in combined:
            per_source = supplies[comp]
            names = tuple(name for name, s in per_source.items() if summarize(s).mean_mw > 0)
            combined[comp] = (combine_sources(per_source.values()), names)
        supply, names = combined[comp]
        pv = power_feasible(node.power_mw, supply, margin, strict, names)
        verdicts, chosen, link = comm_feasible(node, sinr_table, profiles, thresholds)
        comm_ok = any(v.rate_ok and v.sinr_ok for v in verdicts.values())
        reports.append(FeasibilityReport(
            node=node, compartment=comp, power_verdict=pv, comm_verdict=verdicts,
            chosen_tech=chosen, worst_link_id=link.id,
            sinr_threshold_db=thresholds[node.security_reliability],
            overall=pv.feasible and comm_ok,
        ))
    return reports


def report_json(reports):
    return json.dumps([r.as_dict() for r in reports], indent=2)


def report_table(reports):
    """Plain-text table for a terminal."""
    header = (f"{'node':<22}{'comp':<11}{'supply mW':>10}{'demand mW':>11}"
              f"{'power':>7}  {'tech':<8}{'SINR dB':>9}{'overall':>9}")
    lines = [header, "-" * len(header)]
    for r in reports:
        pv = r.power_verdict
        tech = r.chosen_tech.value if r.chosen_tech else "-"
        sinr = f"{r.comm_verdict[r.chosen_tech].worst_sinr_db:.1f}" if r.chosen_tech else "-"
        lines.append(
            f"{r.node.label[:21]:<22}{r.compartment.value:<11}{pv.supply_mean_mw:>10.3f}"
            f"{pv.demand_mw:>11.3f}{'ok' if pv.feasible else 'FAIL':>7}  {tech:<8}"
            f"{sinr:>9}{'yes' if r.overall else 'no':>9}")
    lines.append("SINR thresholds are configurable policy (High/Low reliability), "
                 "not measured targets.")
    return "\n".join(lines)
