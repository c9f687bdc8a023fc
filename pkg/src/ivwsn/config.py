"""JSON configuration.

Every section and field is optional; anything omitted keeps its default.
Unknown keys raise ConfigError. ``default_config_dict()`` returns the full
document with every default filled in, which doubles as the schema.
"""

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Optional

from . import channel, harvest, traces
from .errors import ConfigError
from .feasibility import DEFAULT_SINR_THRESHOLDS_DB
from .model import (COMPARTMENTS, TECHNOLOGIES, Compartment, Domain, Security,
                    Technology, default_profiles, requirement_registry)


@dataclass(frozen=True)
class Config:
    profiles: dict = field(default_factory=lambda: dict(default_profiles()))
    requirements: tuple = field(default_factory=lambda: tuple(requirement_registry()))
    path_loss: dict = field(default_factory=channel.default_path_loss_models)
    penetration: channel.PenetrationTable = field(default_factory=channel.default_penetration)
    geometry: dict = field(default_factory=lambda: dict(channel.DEFAULT_GEOMETRY))
    interferer_eirp_dbm: dict = field(default_factory=dict)
    suppression: bool = True
    residual_penalty_db: Optional[float] = None
    reference_distance_m: float = channel.REFERENCE_DISTANCE_M
    rfeh: dict = field(default_factory=harvest.default_rfeh_curves)
    rf_input_dbm: dict = field(
        default_factory=lambda: {c: dict(v) for c, v in harvest.DEFAULT_RF_INPUT_DBM.items()})
    vibration: dict = field(default_factory=lambda: dict(traces.DEFAULT_VIBRATION))
    thermal: dict = field(default_factory=lambda: dict(traces.DEFAULT_THERMAL))
    emh: harvest.EmhConfig = field(default_factory=harvest.EmhConfig)
    teg: harvest.TegConfig = field(default_factory=harvest.TegConfig)
    sinr_thresholds_db: dict = field(default_factory=lambda: dict(DEFAULT_SINR_THRESHOLDS_DB))
    power_margin: float = 0.0
    strict_power: bool = False

    def scenarios(self, suppression=None):
        if suppression is None:
            suppression = self.suppression
        return channel.default_scenarios(self.profiles, suppression,
                                         self.residual_penalty_db, self.interferer_eirp_dbm)

    def requirement(self, domain):
        domain = Domain.parse(domain)
        return next(r for r in self.requirements if r.domain is domain)


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if hasattr(value, "value") and isinstance(value.value, str):
        return value.value
    return value


def _fields_dict(obj, skip=()):
    return {f.name: _jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj) if f.name not in skip}


def config_to_dict(cfg):
    techs = {}
    for tech in TECHNOLOGIES:
        entry = _fields_dict(cfg.profiles[tech], skip=("tech",))
        entry["interferer_eirp_dbm"] = cfg.interferer_eirp_dbm.get(tech)
        entry["rfeh"] = _fields_dict(cfg.rfeh[tech], skip=("tech",))
        techs[tech.value] = entry
    reqs = {r.domain.value: _fields_dict(r, skip=("domain",)) for r in cfg.requirements}
    comps = {}
    for comp in COMPARTMENTS:
        comps[comp.value] = {
            "penetration_db": {t.value: cfg.penetration.min_penetration_db[t, comp]
                               for t in TECHNOLOGIES},
            "path_loss": {
                t.value: {("los" if los else "nlos"): {
                    "pl0_db": cfg.path_loss[t, comp, los].pl0_db,
                    "exponent": cfg.path_loss[t, comp, los].exponent}
                    for los in (True, False)}
                for t in TECHNOLOGIES},
            "links": _fields_dict(cfg.geometry[comp]),
            "rf_input_dbm": {t.value: p for t, p in cfg.rf_input_dbm[comp].items()},
            "vibration": _fields_dict(cfg.vibration[comp]),
            "thermal": _fields_dict(cfg.thermal[comp]),
        }
    return {
        "technologies": techs,
        "requirements": reqs,
        "compartments": comps,
        "channel": {"reference_distance_m": cfg.reference_distance_m,
                    "suppression": cfg.suppression,
                    "residual_penalty_db": cfg.residual_penalty_db},
        "harvest": {"emh": _fields_dict(cfg.emh), "teg": _fields_dict(cfg.teg)},
        "feasibility": {
            "sinr_threshold_db": {s.value: v for s, v in cfg.sinr_thresholds_db.items()},
            "power_margin": cfg.power_margin,
            "strict_power": cfg.strict_power,
        },
    }


def default_config_dict():
    return config_to_dict(Config())


def _check_keys(data, allowed, path):
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected an object")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) {', '.join(unknown)}")


def _update(obj, data, path, convert=None, skip=()):
    """dataclasses.replace with key checking and light type coercion."""
    names = [f.name for f in dataclasses.fields(obj) if f.name not in skip]
    _check_keys(data, names, path)
    convert = convert or {}
    changes = {}
    for key, value in data.items():
        if key in convert:
            value = convert[key](value)
        elif isinstance(value, list):
            value = tuple(value)
        changes[key] = value
    try:
        return dataclasses.replace(obj, **changes)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _enum_key(enum_cls, key, path):
    try:
        return enum_cls.parse(key)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def load_config(source=None):
    """Build a Config from a path, a dict, or nothing (all defaults)."""
    if source is None:
        return Config()
    if isinstance(source, dict):
        data = source
    else:
        try:
            with open(source) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {source}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{source}: invalid JSON ({exc})") from None
    _check_keys(data, ("technologies", "requirements", "compartments", "channel",
                       "harvest", "feasibility"), "config")
    cfg = Config()
    changes = {}

    if "technologies" in data:
        profiles, rfeh = dict(cfg.profiles), dict(cfg.rfeh)
        interferers = dict(cfg.interferer_eirp_dbm)
        if not isinstance(data["technologies"], dict):
            raise ConfigError("technologies: expected an object")
        for key, entry in data["technologies"].items():
            tech = _enum_key(Technology, key, "technologies")
            path = f"technologies.{key}"
            entry = dict(entry) if isinstance(entry, dict) else entry
            _check_keys(entry, [f.name for f in dataclasses.fields(profiles[tech])
                                if f.name != "tech"] + ["interferer_eirp_dbm", "rfeh"], path)
            if "rfeh" in entry:
                rfeh[tech] = _update(rfeh[tech], entry.pop("rfeh"), path + ".rfeh",
                                     skip=("tech",))
            if "interferer_eirp_dbm" in entry:
                value = entry.pop("interferer_eirp_dbm")
                if value is None:
                    interferers.pop(tech, None)
                else:
                    interferers[tech] = float(value)
            profiles[tech] = _update(profiles[tech], entry, path, skip=("tech",))
        changes.update(profiles=profiles, rfeh=rfeh,
                       interferer_eirp_dbm=interferers)

    if "requirements" in data:
        reqs = {r.domain: r for r in cfg.requirements}
        section = data["requirements"]
        if not isinstance(section, dict):
            raise ConfigError("requirements: expected an object keyed by domain")
        for key, entry in section.items():
            domain = _enum_key(Domain, key, "requirements")
            path = f"requirements.{key}"
            reqs[domain] = _update(reqs[domain], entry, path, skip=("domain",), convert={
                "compartment": lambda v, p=path: _enum_key(Compartment, v, p),
                "security_reliability": lambda v, p=path: _enum_key(Security, v, p),
            })
        changes["requirements"] = tuple(reqs[r.domain] for r in cfg.requirements)

    if "compartments" in data:
        section = data["compartments"]
        if not isinstance(section, dict):
            raise ConfigError("compartments: expected an object")
        path_loss = dict(cfg.path_loss)
        pen = dict(cfg.penetration.min_penetration_db)
        geometry, vib, therm = dict(cfg.geometry), dict(cfg.vibration), dict(cfg.thermal)
        rf_in = {c: dict(v) for c, v in cfg.rf_input_dbm.items()}
        for key, entry in section.items():
            comp = _enum_key(Compartment, key, "compartments")
            path = f"compartments.{key}"
            _check_keys(entry, ("penetration_db", "path_loss", "links", "rf_input_dbm",
                                "vibration", "thermal"), path)
            for tkey, value in entry.get("penetration_db", {}).items():
                tech = _enum_key(Technology, tkey, path + ".penetration_db")
                if value < 0:
                    raise ConfigError(f"{path}.penetration_db.{tkey}: must be >= 0")
                pen[tech, comp] = float(value)
            for tkey, value in entry.get("rf_input_dbm", {}).items():
                rf_in[comp][_enum_key(Technology, tkey, path + ".rf_input_dbm")] = float(value)
            for tkey, models in entry.get("path_loss", {}).items():
                tech = _enum_key(Technology, tkey, path + ".path_loss")
                _check_keys(models, ("los", "nlos"), f"{path}.path_loss.{tkey}")
                for los_key, params in models.items():
                    los = los_key == "los"
                    path_loss[tech, comp, los] = _update(
                        path_loss[tech, comp, los], params,
                        f"{path}.path_loss.{tkey}.{los_key}",
                        skip=("tech", "compartment", "los", "reference_distance_m"))
            if "links" in entry:
                geometry[comp] = _update(geometry[comp], entry["links"], path + ".links")
            if "vibration" in entry:
                vib[comp] = _update(vib[comp], entry["vibration"], path + ".vibration")
            if "thermal" in entry:
                therm[comp] = _update(therm[comp], entry["thermal"], path + ".thermal")
        try:
            changes["penetration"] = channel.PenetrationTable(pen)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        changes.update(path_loss=path_loss, geometry=geometry, vibration=vib,
                       thermal=therm, rf_input_dbm=rf_in)

    if "channel" in data:
        section = data["channel"]
        _check_keys(section, ("reference_distance_m", "suppression", "residual_penalty_db"),
                    "channel")
        changes.update(section)

    if "harvest" in data:
        section = data["harvest"]
        _check_keys(section, ("emh", "teg"), "harvest")
        if "emh" in section:
            changes["emh"] = _update(cfg.emh, section["emh"], "harvest.emh", convert={
                "mode": lambda v: _enum_key(_ModeParser, v, "harvest.emh.mode")})
        if "teg" in section:
            changes["teg"] = _update(cfg.teg, section["teg"], "harvest.teg")

    if "feasibility" in data:
        section = data["feasibility"]
        _check_keys(section, ("sinr_threshold_db", "power_margin", "strict_power"),
                    "feasibility")
        if "sinr_threshold_db" in section:
            th = dict(cfg.sinr_thresholds_db)
            for key, value in section["sinr_threshold_db"].items():
                th[_enum_key(Security, key, "feasibility.sinr_threshold_db")] = float(value)
            changes["sinr_thresholds_db"] = th
        for key in ("power_margin", "strict_power"):
            if key in section:
                changes[key] = section[key]

    cfg = dataclasses.replace(cfg, **changes)
    if cfg.reference_distance_m != channel.REFERENCE_DISTANCE_M:
        cfg = dataclasses.replace(cfg, path_loss={
            k: dataclasses.replace(m, reference_distance_m=cfg.reference_distance_m)
            for k, m in cfg.path_loss.items()})
    if cfg.power_margin < 0:
        raise ConfigError("feasibility.power_margin must be >= 0")
    return cfg


class _ModeParser:
    @staticmethod
    def parse(text):
        try:
            return harvest.EmhMode(str(text).lower())
        except ValueError:
            raise ValueError(f"unknown EMH mode {text!r} (quadratic or oscillator)") from None
