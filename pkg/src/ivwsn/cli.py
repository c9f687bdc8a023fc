"""Command-line entry point: ``ivwsn {linkbudget,harvest,feasibility,synth}``.

Exit codes: 0 success, 2 config error, 3 input error, 4 numeric failure.
Infeasible verdicts are results, not errors, and still exit 0.
"""

import argparse
import dataclasses
import json
import logging
import os
import sys

from . import channel, files, harvest, pipeline, traces
from .config import load_config
from .errors import ConfigError, InputError, NumericError
from .feasibility import report_json, report_table
from .model import COMPARTMENTS, TECHNOLOGIES, Compartment
from .svg import line_svg, scatter_svg
from .units import db_distance

log = logging.getLogger("ivwsn")

EXIT_OK, EXIT_CONFIG, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3, 4


def _compartments(name):
    if name in (None, "all"):
        return COMPARTMENTS
    return (Compartment.parse(name),)


def _sources(text):
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in names if s not in harvest.SOURCES]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"sources must be a comma list drawn from {','.join(harvest.SOURCES)}")
    return tuple(s for s in harvest.SOURCES if s in names)


def _require_files(*paths):
    for p in paths:
        if p is not None and not os.path.isfile(p):
            raise InputError(f"input file not found: {p}")


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def cmd_linkbudget(args, cfg):
    if args.links is None and not args.synthetic:
        raise ConfigError("linkbudget needs --links FILE or --synthetic")
    _require_files(args.links)
    links = files.read_links(args.links) if args.links else None
    rows = pipeline.sweep(cfg, links, seed=args.seed,
                          suppression=False if args.no_suppression else None)
    os.makedirs(args.out_dir, exist_ok=True)
    files.write_sinr_csv(rows, os.path.join(args.out_dir, "sinr.csv"))
    files.write_sinr_json(rows, os.path.join(args.out_dir, "sinr.json"))
    d_ref_cm = cfg.reference_distance_m * 100
    xlabel = f"10·log10(d/dr) [dB], dr = {d_ref_cm:g} cm"
    for comp in COMPARTMENTS:
        series = []
        for tech in TECHNOLOGIES:
            sel = [r for r in rows if r.link.compartment is comp and r.tech is tech]
            x = db_distance([r.link.distance_m for r in sel], cfg.reference_distance_m)
            series.append((tech.value, x, [r.sinr_db for r in sel]))
        svg = scatter_svg(series, f"Worst-case SINR, {comp.value} compartment",
                          xlabel, "worst-case SINR [dB]")
        _write(os.path.join(args.out_dir, f"sinr_{comp.value}.svg"), svg)
    print(f"wrote {len(rows)} SINR rows to {args.out_dir}")
    return EXIT_OK


def _run_harvest(args, cfg, compartments):
    accel = temps = None
    if args.accel or args.temps:
        if len(compartments) != 1:
            raise ConfigError("--accel/--temps need a single --compartment")
        _require_files(args.accel, args.temps)
        comp = compartments[0]
        if args.accel:
            accel = traces.parse_trace(args.accel, traces.TraceKind.ACCEL, comp)
        if args.temps:
            temps = traces.parse_trace(args.temps, traces.TraceKind.TEMP, comp)
    kwargs = dict(scenario=args.scenario, duration_s=args.duration, rate_hz=args.rate,
                  sources=args.sources, accel=accel, temps=temps)
    return pipeline.harvest_all(cfg, compartments, **kwargs, seed=args.seed)


def cmd_harvest(args, cfg):
    compartments = _compartments(args.compartment)
    runs = _run_harvest(args, cfg, compartments)
    os.makedirs(args.out_dir, exist_ok=True)
    summary = {"scenario": args.scenario, "sources": list(args.sources), "compartments": {}}
    for comp, run in runs.items():
        for name, s in run.series.items():
            harvest.write_power_csv(
                s, os.path.join(args.out_dir, f"power_{comp.value}_{name}.csv"))
        for note in run.notes:
            print(f"warning: {note}", file=sys.stderr)
        summary["compartments"][comp.value] = {
            "sources": {n: s.summary.as_dict() for n, s in run.series.items()},
            "combined": run.combined.summary.as_dict(),
            "notes": run.notes,
        }
        series = [(n, s.timestamps, s.power_mw) for n, s in run.series.items()]
        if len(run.series) > 1:
            c = run.combined
            series.append(("total", c.timestamps, c.power_mw))
            # every plotted line is also available as data
            harvest.write_power_csv(c, os.path.join(args.out_dir, f"power_{comp.value}_total.csv"))
        svg = line_svg(series, f"Harvested power, {comp.value} compartment",
                       "time [s]", "useful power [mW]")
        _write(os.path.join(args.out_dir, f"harvest_{comp.value}.svg"), svg)
    _write(os.path.join(args.out_dir, "harvest_summary.json"),
           json.dumps(summary, indent=2) + "\n")
    for comp, entry in summary["compartments"].items():
        parts = ", ".join(f"{n} {v['mean_mw']:.3f}" for n, v in entry["sources"].items())
        print(f"{comp:<10} mean mW: {parts}")
    return EXIT_OK


def cmd_feasibility(args, cfg):
    _require_files(args.nodes, args.links)
    nodes = files.read_nodes(args.nodes) if args.nodes else list(cfg.requirements)
    if args.compartment not in (None, "all"):
        comp = Compartment.parse(args.compartment)
        nodes = [n for n in nodes if n.compartment is comp]
    if args.demand is not None:
        nodes = [dataclasses.replace(n, power_mw=args.demand) for n in nodes]
    if args.margin is not None:
        cfg = dataclasses.replace(cfg, power_margin=args.margin)
    if args.strict:
        cfg = dataclasses.replace(cfg, strict_power=True)
    links = files.read_links(args.links) if args.links else None
    rows = pipeline.sweep(cfg, links, seed=args.seed)
    needed = tuple(dict.fromkeys(n.compartment for n in nodes))
    args.sources = harvest.SOURCES
    args.accel = args.temps = None
    runs = _run_harvest(args, cfg, needed) if needed else {}
    reports = pipeline.feasibility_report(cfg, nodes, rows, runs, seed=args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    _write(os.path.join(args.out_dir, "feasibility.json"), report_json(reports) + "\n")
    print(report_table(reports))
    return EXIT_OK


def cmd_synth(args, cfg):
    os.makedirs(args.out_dir, exist_ok=True)
    for comp in _compartments(args.compartment):
        acc = traces.synth_accel(args.scenario, comp, args.duration, args.seed, args.rate,
                                 cfg.vibration)
        tmp = traces.synth_temps(args.scenario, comp, args.duration, args.temp_rate,
                                 cfg.thermal)
        traces.write_trace(acc, os.path.join(args.out_dir,
                                             f"accel_{comp.value}_{args.scenario}.csv"))
        traces.write_trace(tmp, os.path.join(args.out_dir,
                                             f"temps_{comp.value}_{args.scenario}.csv"))
    files.write_links(channel.synthetic_links(cfg.geometry, args.seed),
                      os.path.join(args.out_dir, "links.csv"))
    print(f"wrote synthetic traces and links to {args.out_dir}")
    return EXIT_OK


def _add_harvest_args(p, duration):
    p.add_argument("--compartment", default="all",
                   choices=["all"] + [c.value for c in COMPARTMENTS])
    p.add_argument("--scenario", default="city", choices=sorted(traces.SCENARIOS))
    p.add_argument("--duration", type=float, default=duration, help="seconds")
    p.add_argument("--rate", type=float, default=1000.0, help="sample rate in Hz")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ivwsn", description="Feasibility analysis for energy-harvesting "
                                  "intra-vehicular wireless sensor networks.")
    parser.add_argument("--config", help="JSON config file (defaults are used if omitted)")
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("linkbudget", help="worst-case SINR sweep")
    p.add_argument("--links", help="link CSV (id,compartment,distance_m,los,path_loss_db)")
    p.add_argument("--synthetic", action="store_true", help="use the synthetic link set")
    p.add_argument("--no-suppression", action="store_true",
                   help="disable narrowband interference suppression")
    p.set_defaults(func=cmd_linkbudget)

    p = sub.add_parser("harvest", help="simulate harvesters over traces")
    _add_harvest_args(p, 600.0)
    p.add_argument("--accel", help="acceleration CSV (t_s,ax,ay,az)")
    p.add_argument("--temps", help="temperature CSV (t_s,t_hot_c,t_amb_c)")
    p.add_argument("--sources", type=_sources, default=harvest.SOURCES,
                   help="comma list of rf,vibration,thermal")
    p.set_defaults(func=cmd_harvest)

    p = sub.add_parser("feasibility", help="per-node verdicts")
    _add_harvest_args(p, 600.0)
    p.add_argument("--nodes", help="node spec CSV (defaults to the requirement registry)")
    p.add_argument("--links", help="link CSV (defaults to the synthetic link set)")
    p.add_argument("--demand", type=float, help="override every node's demand in mW")
    p.add_argument("--margin", type=float, help="required supply margin (fraction)")
    p.add_argument("--strict", action="store_true",
                   help="judge against minimum instantaneous supply instead of the mean")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("synth", help="write synthetic traces and links")
    _add_harvest_args(p, 60.0)
    p.add_argument("--temp-rate", type=float, default=1.0, help="temperature rate in Hz")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.config is not None and not os.path.isfile(args.config):
            raise ConfigError(f"config file not found: {args.config}")
        cfg = load_config(args.config)
        log.info("config: %s", args.config or "built-in defaults")
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
