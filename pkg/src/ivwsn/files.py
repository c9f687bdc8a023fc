"""CSV/JSON readers and writers for links, SINR tables and node specs."""

import csv
import json

from .channel import SinrRow
from .errors import ParseError
from .model import Compartment, Domain, Link, NodeRequirement, Security, Technology

LINK_COLUMNS = ("id", "compartment", "distance_m", "los", "path_loss_db")
SINR_COLUMNS = ("link_id", "compartment", "distance_m", "los", "tech", "sinr_db")
NODE_REQUIRED = ("domain", "compartment", "power_mw", "rate_kbps_max", "security_reliability")
NODE_OPTIONAL = ("name", "rate_kbps_min", "link_id", "sensing_rate_hz", "bit_resolution")

_TRUE = {"1", "true", "yes", "y", "los"}
_FALSE = {"0", "false", "no", "n", "nlos"}


def _bool(text):
    key = text.strip().lower()
    if key in _TRUE:
        return True
    if key in _FALSE:
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _read_rows(path, required, optional=()):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError("empty file", path=path) from None
        missing = [c for c in required if c not in header]
        if missing:
            raise ParseError(f"missing column(s) {', '.join(missing)}", row=1, path=path)
        extra = [c for c in header if c not in required and c not in optional]
        if extra:
            raise ParseError(f"unknown column(s) {', '.join(extra)}", row=1, path=path)
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(f"expected {len(header)} fields, got {len(row)}",
                                 row=lineno, path=path)
            yield lineno, dict(zip(header, (c.strip() for c in row)))


def read_links(path):
    links, seen = [], set()
    for lineno, rec in _read_rows(path, LINK_COLUMNS[:4], LINK_COLUMNS[4:]):
        try:
            pl = rec.get("path_loss_db", "")
            link = Link(rec["id"], Compartment.parse(rec["compartment"]),
                        float(rec["distance_m"]), _bool(rec["los"]),
                        float(pl) if pl else None)
        except ValueError as exc:
            raise ParseError(str(exc), row=lineno, path=path) from None
        if link.id in seen:
            raise ParseError(f"duplicate link id {link.id!r}", row=lineno, path=path)
        seen.add(link.id)
        links.append(link)
    return links


def write_links(links, path):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(LINK_COLUMNS) + "\n")
        for l in links:
            pl = "" if l.measured_path_loss_db is None else repr(float(l.measured_path_loss_db))
            fh.write(f"{l.id},{l.compartment.value},{l.distance_m!r},"
                     f"{str(l.los).lower()},{pl}\n")


def sinr_records(rows):
    return [{"link_id": r.link.id, "compartment": r.link.compartment.value,
             "distance_m": r.link.distance_m, "los": r.link.los,
             "tech": r.tech.value, "sinr_db": r.sinr_db} for r in rows]


def write_sinr_csv(rows, path):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(SINR_COLUMNS) + "\n")
        for rec in sinr_records(rows):
            fh.write(f"{rec['link_id']},{rec['compartment']},{rec['distance_m']!r},"
                     f"{str(rec['los']).lower()},{rec['tech']},{rec['sinr_db']!r}\n")


def write_sinr_json(rows, path):
    with open(path, "w") as fh:
        json.dump(sinr_records(rows), fh, indent=2)
        fh.write("\n")


def read_sinr_csv(path):
    out = []
    for lineno, rec in _read_rows(path, SINR_COLUMNS):
        try:
            link = Link(rec["link_id"], Compartment.parse(rec["compartment"]),
                        float(rec["distance_m"]), _bool(rec["los"]))
            out.append(SinrRow(link, Technology.parse(rec["tech"]), float(rec["sinr_db"])))
        except ValueError as exc:
            raise ParseError(str(exc), row=lineno, path=path) from None
    return out


def _optional(rec, key, cast):
    text = rec.get(key, "")
    return cast(text) if text else None


def read_nodes(path):
    """Node spec CSV; required columns are listed in NODE_REQUIRED."""
    nodes = []
    for lineno, rec in _read_rows(path, NODE_REQUIRED, NODE_OPTIONAL):
        try:
            lo = rec.get("rate_kbps_min", "")
            hi = float(rec["rate_kbps_max"])
            nodes.append(NodeRequirement(
                domain=Domain.parse(rec["domain"]),
                compartment=Compartment.parse(rec["compartment"]),
                power_mw=float(rec["power_mw"]),
                rate_kbps=(float(lo) if lo else 0.0, hi),
                security_reliability=Security.parse(rec["security_reliability"]),
                name=rec.get("name", ""),
                link_id=rec.get("link_id") or None,
                sensing_rate_hz=_optional(rec, "sensing_rate_hz", float),
                bit_resolution=_optional(rec, "bit_resolution", int),
            ))
        except ValueError as exc:
            raise ParseError(str(exc), row=lineno, path=path) from None
    return nodes
