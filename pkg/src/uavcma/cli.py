"""Command-line entry point: ``uavcma {rates,allocate,static,tradeoff}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .allocator import SCHEMES, ConvergenceError, allocate, static_maxmin
from .config import ConfigError, load_scenario
from .delay import access_delays
from .model import place_terminals, rate, to_linear
from .search import InfeasibleToleranceError, best_under_tolerance, default_grid, sweep

PROG = "uavcma"


class UsageError(Exception):
    pass


def fmt(value) -> str:
    """Shortest decimal string that round-trips the float."""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _floats(values):
    return [float(v) for v in values]


def _phi_list(text):
    if text is None or not text.strip():
        return []
    try:
        values = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")
    if any(not (v >= 0) for v in values):
        raise argparse.ArgumentTypeError("delay tolerances must be >= 0")
    return values


def cmd_rates(cfg, args):
    sc = cfg.scenario
    half = sc.span / 2.0
    x_min = -half if args.x_min is None else args.x_min
    x_max = half if args.x_max is None else args.x_max
    if not x_min < x_max:
        raise UsageError(f"--x-min must be below --x-max (got {x_min} and {x_max})")
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    xs = np.linspace(x_min, x_max, args.samples)
    positions = np.array(place_terminals(sc.num_terminals, sc.span).positions)
    rates = rate(xs[:, None], positions[None, :], to_linear(sc))
    if args.format == "json":
        return _json_text({
            "positions_m": _floats(positions),
            "x_m": _floats(xs),
            "rates": [_floats(r) for r in rates],
        })
    header = ["x_m"] + [f"r_{k + 1}" for k in range(sc.num_terminals)]
    return _csv_text(header, ([x, *r] for x, r in zip(xs, rates)))


def cmd_allocate(cfg, args):
    if not cfg.has_traj_length:
        raise UsageError("allocate needs traj_length_m in the scenario file")
    sc = cfg.scenario
    if not sc.traj_length > 0:
        raise UsageError("allocate needs traj_length_m > 0; use 'static' for a hovering UAV")
    scheme = args.scheme or cfg.scheme
    alloc = allocate(sc, scheme, cfg.epsilon)
    delays = access_delays(alloc, sc.speed)
    if args.format == "csv":
        b = alloc.delimiters
        rows = [
            [k + 1, alloc.positions[k], b[k], b[k + 1], alloc.portions[k],
             alloc.throughputs[k], delays.per_terminal[k]]
            for k in range(alloc.num_terminals)
        ]
        header = ["terminal", "position_m", "b_lo_m", "b_hi_m", "portion", "throughput", "delay_s"]
        return _csv_text(header, rows)
    return _json_text({
        "scheme": scheme,
        "traj_length_m": float(sc.traj_length),
        "delimiters": _floats(alloc.delimiters),
        "portions": _floats(alloc.portions),
        "throughputs": _floats(alloc.throughputs),
        "min_throughput": float(alloc.min_throughput),
        "iterations": int(alloc.iterations),
        "delays": _floats(delays.per_terminal),
        "rms_delay": float(delays.rms),
        "period": float(delays.period),
    })


def cmd_static(cfg, args):
    tau = static_maxmin(cfg.scenario)
    if args.format == "csv":
        return _csv_text(["max_min_throughput"], [[tau]])
    return _json_text({"max_min_throughput": float(tau)})


def cmd_tradeoff(cfg, args):
    if not args.dbar_step > 0:
        raise UsageError("--dbar-step must be > 0")
    if not args.dbar_max >= 0:
        raise UsageError("--dbar-max must be >= 0")
    grid = default_grid(args.dbar_max, args.dbar_step)
    schemes = SCHEMES if args.scheme == "both" else (args.scheme,)
    sweeps = {s: sweep(cfg.scenario, s, grid, cfg.epsilon) for s in schemes}
    selected = [(phi, s, best_under_tolerance(sweeps[s], phi)) for phi in args.phi for s in schemes]

    if args.format == "json":
        return _json_text({
            "sweep": {
                s: [{"d_bar": p.traj_length_norm, "tau": p.max_min_throughput, "rms_delay_s": p.rms_delay}
                    for p in pts]
                for s, pts in sweeps.items()
            },
            "selected": [
                {"phi_s": phi, "scheme": s, "d_bar_star": p.traj_length_norm, "tau_star": p.max_min_throughput}
                for phi, s, p in selected
            ],
        })
    text = _csv_text(
        ["scheme", "d_bar", "tau", "rms_delay_s"],
        ([s, p.traj_length_norm, p.max_min_throughput, p.rms_delay] for s, pts in sweeps.items() for p in pts),
    )
    if selected:
        text += "\n" + _csv_text(
            ["phi_s", "scheme", "d_bar_star", "tau_star"],
            ([phi, s, p.traj_length_norm, p.max_min_throughput] for phi, s, p in selected),
        )
    return text


COMMANDS = {
    "rates": (cmd_rates, "csv", "rate of every terminal against UAV position"),
    "allocate": (cmd_allocate, "json", "segment allocation and access delays for one trajectory length"),
    "static": (cmd_static, "json", "max-min throughput of a UAV hovering above the origin"),
    "tradeoff": (cmd_tradeoff, "csv", "sweep trajectory length; best throughput per delay tolerance"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH", help="scenario file")
    common.add_argument("--output", default="stdout", metavar="PATH|stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default depends on the command)")

    parser = argparse.ArgumentParser(prog=PROG, description="Cyclical TDMA planning for a UAV base station.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, (_, default_format, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(default_format=default_format)
        if name == "rates":
            p.add_argument("--x-min", type=float, default=None, help="default: -span/2")
            p.add_argument("--x-max", type=float, default=None, help="default: span/2")
            p.add_argument("--samples", type=int, default=201)
        elif name == "allocate":
            p.add_argument("--scheme", choices=SCHEMES, default=None,
                           help="overrides the scenario file (default: optimal)")
        elif name == "tradeoff":
            p.add_argument("--dbar-max", type=float, default=2.0)
            p.add_argument("--dbar-step", type=float, default=0.01)
            p.add_argument("--phi", type=_phi_list, default=[], metavar="S1,S2,...",
                           help="RMS delay tolerances in seconds")
            p.add_argument("--scheme", choices=SCHEMES + ("both",), default="both")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    handler = COMMANDS[args.command][0]
    try:
        cfg = load_scenario(args.config)
        text = handler(cfg, args)
    except UsageError as exc:
        parser.exit(2, f"{PROG} {args.command}: error: {exc}\n")
    except (ConfigError, InfeasibleToleranceError, ConvergenceError, ValueError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1

    if args.output == "stdout":
        sys.stdout.write(text)
    else:
        try:
            with open(args.output, "w", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"{PROG}: error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
