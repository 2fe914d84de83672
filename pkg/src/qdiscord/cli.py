"""Command-line front end.

    qdiscord point   --state 0.06,0.42,0.30 --channel phase-flip --p 0
    qdiscord sweep   --state 0.06,0.42,0.30 --channel phase-flip --p-range 0:1:0.001
    qdiscord surface --channel phase-flip --fixed 0.1 --grid-range -1:1:0.02
    qdiscord verify  --samples 500 --seed 42

Exit codes: 0 ok, 1 usage, 2 unphysical input, 3 verification failure.
"""

import argparse
import contextlib
import json
import math
import sys

from .channels import ChannelKind, evolve_coefficients
from .correlations import DEFAULT_GRID_N, analytic_record
from .dynamics import classify_regime, grid_values, operational_discord, surface, sweep
from .errors import InvalidArgumentError, NotAStateError
from .states import BellVector, check_physical
from .verification import ORACLE_TOL, run_verification

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNPHYSICAL = 2
EXIT_VERIFY = 3

SWEEP_COLUMNS = ("p", "C", "Q", "I", "chi", "branch")
POINT_COLUMNS = SWEEP_COLUMNS + (
    "theta_opt",
    "phi_opt",
    "regime",
    "p_sc",
    "op_Q",
    "op_C",
    "op_channel",
    "op_delta",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x):
    """CSV rendering: 9 significant digits, empty for None."""
    if x is None:
        return ""
    if isinstance(x, (bool, str)):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.9g}"


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, ChannelKind):
        return x.value
    return x


def _parse_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"expected start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(s) for s in parts)
    except ValueError:
        raise UsageError(f"non-numeric range {text!r}") from None
    try:
        return grid_values(start, stop, step)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None


def _p_grid(text):
    grid = _parse_range(text)
    if grid[0] < 0.0 or grid[-1] > 1.0:
        raise UsageError(f"p range {text!r} leaves [0, 1]")
    return grid


def _state(args):
    try:
        c = BellVector.parse(args.state)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None
    return check_physical(c)


def _channel(args):
    try:
        return ChannelKind.parse(args.channel)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None


def point_row(c, kind, p):
    """All values reported by ``point`` as an ordered dict."""
    e = evolve_coefficients(c, kind, p)
    rec = analytic_record(e, p)
    regime = classify_regime(c, kind)
    op = operational_discord(e.as_bell_vector())
    row = rec.as_dict()
    row.update(
        regime=regime.regime,
        p_sc=regime.p_sc,
        op_Q=op.Q,
        op_C=op.C,
        op_channel=op.channel.value,
        op_delta=abs(op.Q - rec.Q),
    )
    return {k: row[k] for k in POINT_COLUMNS}


def cmd_point(args, out):
    c, kind = _state(args), _channel(args)
    p = float(args.p)
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"--p {p!r} outside [0, 1]")
    row = point_row(c, kind, p)
    if args.format == "json":
        json.dump({k: _json_value(v) for k, v in row.items()}, out, indent=2)
        out.write("\n")
    else:
        out.write(",".join(POINT_COLUMNS) + "\n")
        out.write(",".join(fmt(row[k]) for k in POINT_COLUMNS) + "\n")
    return EXIT_OK


def cmd_sweep(args, out):
    c, kind = _state(args), _channel(args)
    res = sweep(c, kind, _p_grid(args.p_range))
    if args.format == "json":
        doc = {
            "channel": kind.value,
            "state": list(c.as_tuple()),
            "regime": res.regime,
            "p_sc": res.p_sc,
            "p_sc_detected": res.p_sc_detected,
            "crossings": res.crossings,
            "samples": [r.as_dict() for r in res.samples],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(",".join(SWEEP_COLUMNS) + "\n")
    for r in res.samples:
        out.write(",".join(fmt(getattr(r, k)) for k in SWEEP_COLUMNS) + "\n")
    out.write(f"# channel={kind.value}\n")
    out.write(f"# state={c}\n")
    out.write(f"# regime={res.regime}\n")
    out.write(f"# crossings={','.join(fmt(x) for x in res.crossings)}\n")
    out.write(f"# p_sc={fmt(res.p_sc)}\n")
    out.write(f"# p_sc_detected={fmt(res.p_sc_detected)}\n")
    return EXIT_OK


def cmd_surface(args, out):
    kind = _channel(args)
    values = _parse_range(args.grid_range)
    try:
        res = surface(kind, args.fixed, values)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None
    ia, ib = res.axes
    names = (f"c{ia}", f"c{ib}", "p_sc", "flag")
    if args.format == "json":
        doc = {
            "channel": kind.value,
            "fixed_axis": kind.flip_axis,
            "fixed_value": res.fixed_value,
            "cells": [dict(zip(names, (a, b, _json_value(v), f))) for a, b, v, f in res.rows()],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(",".join(names) + "\n")
    for a, b, v, f in res.rows():
        out.write(f"{fmt(a)},{fmt(b)},{fmt(v)},{f}\n")
    out.write(f"# channel={kind.value}\n")
    out.write(f"# c{kind.flip_axis}={fmt(res.fixed_value)}\n")
    return EXIT_OK


def cmd_verify(args, out, analytic=None):
    if args.samples < 0:
        raise UsageError("--samples must be >= 0")
    if args.grid_n < 32:
        raise UsageError("--grid-n must be >= 32")
    kwargs = {} if analytic is None else {"analytic": analytic}
    rep = run_verification(args.samples, args.seed, args.grid_n, ORACLE_TOL, **kwargs)
    if args.format == "json":
        doc = {
            "samples": rep.samples,
            "seed": rep.seed,
            "grid_n": rep.grid_n,
            "evaluations": rep.evaluations,
            "max_abs_dC": rep.max_dC,
            "max_abs_dQ": rep.max_dQ,
            "tolerance": rep.tol,
            "failures": [
                {"state": list(f.state), "channel": f.channel.value, "p": f.p, "dC": f.dC, "dQ": f.dQ}
                for f in rep.failures
            ],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        out.write(f"samples={rep.samples} seed={rep.seed} grid_n={rep.grid_n} evaluations={rep.evaluations}\n")
        out.write(f"max_abs_dC={fmt(rep.max_dC)}\n")
        out.write(f"max_abs_dQ={fmt(rep.max_dQ)}\n")
        out.write(f"tolerance={fmt(rep.tol)}\n")
        out.write(f"failures={len(rep.failures)}\n")
        for f in rep.failures:
            state = ",".join(fmt(x) for x in f.state)
            out.write(f"# fail state={state} channel={f.channel.value} p={fmt(f.p)} dC={fmt(f.dC)} dQ={fmt(f.dQ)}\n")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def build_parser():
    parser = _Parser(prog="qdiscord", description="Classical and quantum correlations of Bell-diagonal states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, state=True, channel=True):
        if state:
            p.add_argument("--state", required=True, help="coefficients c1,c2,c3")
        if channel:
            p.add_argument("--channel", default="phase-flip", choices=[k.value for k in ChannelKind])
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("point", help="correlations at a single p")
    common(p)
    p.add_argument("--p", type=float, required=True)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="correlations along a p grid")
    common(p)
    p.add_argument("--p-range", default="0:1:0.001", help="start:stop:step")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("surface", help="sudden-change time over a plane of states")
    common(p, state=False)
    p.add_argument("--fixed", type=float, default=0.1, help="value of the preserved coefficient")
    p.add_argument("--grid-range", default="-1:1:0.02", help="start:stop:step for both scanned coefficients")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("verify", help="closed form vs numerical extremization")
    common(p, state=False, channel=False)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--grid-n", type=int, default=DEFAULT_GRID_N)
    p.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = ("--state", "--p-range", "--grid-range", "--p", "--fixed")


def _glue_negative_values(argv):
    # argparse takes "-1:1:0.02" or "-0.3,0.1,0.2" for an option; bind such
    # values to their flag explicitly.
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        with contextlib.ExitStack() as stack:
            out = sys.stdout if args.out is None else stack.enter_context(open(args.out, "w"))
            return args.func(args, out)
    except UsageError as exc:
        print(f"qdiscord: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotAStateError as exc:
        print(f"qdiscord: unphysical input: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL


if __name__ == "__main__":
    sys.exit(main())
