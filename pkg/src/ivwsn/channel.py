"""Path loss, interference bound and worst-case SINR per link and technology."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (DistanceBelowReference, MissingModel, MissingTableEntry,
                     SuppressionNotSupported)
from .model import COMPARTMENTS, TECHNOLOGIES, Compartment, Link, Technology

REFERENCE_DISTANCE_M = 0.01


@dataclass(frozen=True)
class PathLossModel:
    """Log-distance path loss ``pl0 + 10 n log10(d / d_ref)``."""
    tech: Technology
    compartment: Compartment
    los: bool
    pl0_db: float
    exponent: float
    reference_distance_m: float = REFERENCE_DISTANCE_M

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("path loss exponent must be >= 0")
        if not self.reference_distance_m > 0:
            raise ValueError("reference distance must be > 0")


@dataclass(frozen=True)
class PenetrationTable:
    min_penetration_db: dict

    def __post_init__(self):
        for key, value in self.min_penetration_db.items():
            if value < 0:
                raise ValueError(f"negative penetration loss for {key}")

    def __getitem__(self, key):
        try:
            return self.min_penetration_db[key]
        except KeyError:
            tech, comp = key
            raise MissingTableEntry(
                f"no penetration loss for ({tech.value}, {comp.value})") from None


@dataclass(frozen=True)
class InterferenceScenario:
    """Single dominant interferer.

    When ``suppressed`` is set the interferer is removed entirely, unless
    ``residual_penalty_db`` is given, in which case SINR = SNR - penalty.
    """
    interferer_eirp_dbm: float
    suppressed: bool = False
    residual_penalty_db: Optional[float] = None


@dataclass(frozen=True)
class SinrRow:
    link: Link
    tech: Technology
    sinr_db: float


def path_loss(model, d):
    if d < model.reference_distance_m:
        raise DistanceBelowReference(
            f"distance {d} m is below the reference distance "
            f"{model.reference_distance_m} m")
    return model.pl0_db + 10.0 * model.exponent * math.log10(d / model.reference_distance_m)


def received_power(profile, loss_db):
    return profile.eirp_dbm - loss_db


def interference_power(scenario, pen, tech, compartment):
    """Worst-case interference at the receiver in dBm, or None if suppressed."""
    loss = pen[tech, compartment]
    if scenario.suppressed:
        return None
    return scenario.interferer_eirp_dbm - loss


def sinr_db(p_rx_dbm, noise_dbm, interference_dbm=None):
    """SINR with noise and interference summed in linear milliwatts."""
    total_mw = 10.0 ** (noise_dbm / 10.0)
    if interference_dbm is not None:
        total_mw += 10.0 ** (interference_dbm / 10.0)
    return p_rx_dbm - 10.0 * math.log10(total_mw)


def link_loss(link, pl_model):
    if link.measured_path_loss_db is not None:
        return link.measured_path_loss_db
    return path_loss(pl_model, link.distance_m)


def worst_case_sinr(profile, link, pl_model, scenario, pen):
    if scenario.suppressed and not profile.nb_suppression:
        raise SuppressionNotSupported(
            f"{profile.tech.value} has no narrowband interference suppression")
    if link.distance_m < pl_model.reference_distance_m:
        raise DistanceBelowReference(
            f"link {link.id}: distance {link.distance_m} m is below the reference distance")
    p_rx = received_power(profile, link_loss(link, pl_model))
    interference = interference_power(scenario, pen, profile.tech, link.compartment)
    sinr = sinr_db(p_rx, profile.noise_floor_dbm, interference)
    if scenario.suppressed and scenario.residual_penalty_db is not None:
        sinr -= scenario.residual_penalty_db
    return sinr


def _sort_key(link):
    return COMPARTMENTS.index(link.compartment), link.distance_m, link.id


def sweep_links(links, profiles, pl_models, scenarios, pen, techs=TECHNOLOGIES):
    """Worst-case SINR for every (link, technology) pair.

    ``pl_models`` is keyed by ``(tech, compartment, los)`` and ``scenarios``
    by technology. Rows come out ordered by compartment, distance, link id
    and technology.
    """
    rows = []
    for link in sorted(links, key=_sort_key):
        for tech in techs:
            key = (tech, link.compartment, link.los)
            if key not in pl_models:
                raise MissingModel(
                    f"no path loss model for tech={tech.value} "
                    f"compartment={link.compartment.value} los={link.los}")
            sinr = worst_case_sinr(profiles[tech], link, pl_models[key],
                                   scenarios[tech], pen)
            rows.append(SinrRow(link, tech, sinr))
    return rows


def default_scenarios(profiles, suppression=True, residual_penalty_db=None,
                      interferer_eirp_dbm=None):
    """One interferer per band at that band's EIRP limit.

    Suppression is switched on for every band whose profile supports it.
    """
    interferer_eirp_dbm = interferer_eirp_dbm or {}
    out = {}
    for tech, profile in profiles.items():
        out[tech] = InterferenceScenario(
            interferer_eirp_dbm=interferer_eirp_dbm.get(tech, profile.eirp_dbm),
            suppressed=bool(suppression and profile.nb_suppression),
            residual_penalty_db=residual_penalty_db,
        )
    return out


# (pl0_db, exponent) per (tech, los); mmWave LoS exponent differs by compartment.
_PL_DEFAULTS = {
    (Technology.BAND_2_4GHZ, True): (4.0, 1.8),
    (Technology.BAND_2_4GHZ, False): (10.0, 2.0),
    (Technology.UWB, True): (5.0, 1.8),
    (Technology.UWB, False): (12.0, 2.0),
    (Technology.MMWAVE, True): (30.0, 3.0),
    (Technology.MMWAVE, False): (70.0, 3.0),
}
_PL_OVERRIDES = {
    (Technology.MMWAVE, Compartment.ENGINE, True): (30.0, 2.0),
}

DEFAULT_PENETRATION_DB = {
    (Technology.BAND_2_4GHZ, Compartment.ENGINE): 3.0,
    (Technology.BAND_2_4GHZ, Compartment.CHASSIS): 2.0,
    (Technology.BAND_2_4GHZ, Compartment.PASSENGER): 1.0,
    (Technology.UWB, Compartment.ENGINE): 10.0,
    (Technology.UWB, Compartment.CHASSIS): 9.0,
    (Technology.UWB, Compartment.PASSENGER): 8.0,
    (Technology.MMWAVE, Compartment.ENGINE): 125.0,
    (Technology.MMWAVE, Compartment.CHASSIS): 120.0,
    (Technology.MMWAVE, Compartment.PASSENGER): 115.0,
}


def default_path_loss_models(reference_distance_m=REFERENCE_DISTANCE_M):
    models = {}
    for tech in TECHNOLOGIES:
        for comp in COMPARTMENTS:
            for los in (True, False):
                pl0, n = _PL_OVERRIDES.get((tech, comp, los), _PL_DEFAULTS[tech, los])
                models[tech, comp, los] = PathLossModel(tech, comp, los, pl0, n,
                                                        reference_distance_m)
    return models


def default_penetration():
    return PenetrationTable(dict(DEFAULT_PENETRATION_DB))


@dataclass(frozen=True)
class LinkGeometry:
    """Parameters of the synthetic link population for one compartment."""
    count: int
    distance_m: tuple
    los_fraction: float


DEFAULT_GEOMETRY = {
    Compartment.ENGINE: LinkGeometry(156, (0.03, 0.8), 0.55),
    Compartment.CHASSIS: LinkGeometry(182, (0.1, 2.5), 0.3),
    Compartment.PASSENGER: LinkGeometry(210, (0.1, 2.0), 0.6),
}


def synthetic_links(geometry=None, seed=0):
    """Draw a deterministic link population.

    Distances are log-uniform over each compartment's range and LoS is a
    Bernoulli draw with the compartment's LoS fraction.
    """
    geometry = geometry or DEFAULT_GEOMETRY
    rng = np.random.default_rng(seed)
    links = []
    for comp in COMPARTMENTS:
        geo = geometry[comp]
        lo, hi = geo.distance_m
        d = np.sort(np.exp(rng.uniform(np.log(lo), np.log(hi), geo.count)))
        los = rng.random(geo.count) < geo.los_fraction
        prefix = comp.value[0].upper()
        for i in range(geo.count):
            links.append(Link(f"{prefix}{i + 1:03d}", comp,
                              round(float(d[i]), 4), bool(los[i])))
    return links


def worst_link(rows, compartment, link_id=None):
    """Pick the link used for a conservative verdict.

    The longest NLoS link in the compartment, or the longest link of any kind
    when the compartment has no NLoS link. ``link_id`` pins a specific link.
    Returns None if nothing matches.
    """
    links = {r.link.id: r.link for r in rows if r.link.compartment == compartment}
    if link_id is not None:
        return links.get(link_id)
    if not links:
        return None
    pool = [l for l in links.values() if not l.los] or list(links.values())
    return max(pool, key=lambda l: (l.distance_m, l.id))
