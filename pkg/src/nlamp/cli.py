"""Command-line interface: sweeps, crossovers, Wigner grids, state dumps,
success probabilities and the verify suite.

Outputs are deterministic tables (CSV or JSON) with a reproducibility
comment header; --plot additionally renders a figure next to the table.
Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 verify FAIL.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, fock, metrics, scs, squeezed, verify, wigner
from .amplifier import (
    HeraldParams,
    SEQ_CATALOG,
    amplify,
    first_order_success_probability,
    get_seq,
    success_probability,
)
from .errors import InvalidRange, NlampError, NumericalError, UsageError
from .fock import StateSpec, auto_cutoff, make_state, mean_photons
from .optimize import Bracket, find_crossing

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY_FAIL = 3

STATE_NAMES = {
    "coherent": "coherent",
    "scs-even": "scs_even",
    "scs-odd": "scs_odd",
    "squeezed-vacuum": "squeezed_vacuum",
    "squeezed-one": "squeezed_one",
    "number": "number",
}

PRESETS = {
    "fig1": {"command": "sweep", "seq": "addsub,add2", "alpha": "0:3:0.05"},
    "fig3": {
        "command": "sweep",
        "seq": "addsub2,add4,addsub_add2,add2_addsub",
        "alpha": "0:3:0.05",
    },
    "fig4": {
        "command": "scs-sweep",
        "seq": "addsub,add2",
        "parity": "both",
        "alpha": "0.05:4:0.05",
    },
    "fig5": {
        "command": "squeezed-fit",
        "seq": "identity,addsub,add2",
        "parity": "both",
        "alpha": "0.05:3.5:0.05",
    },
}

CROSSOVER_CATALOG = {
    "ein-one-cycle": {
        "curves": ("ein_avg/addsub", "ein_avg/add2"),
        "brackets": [(0.5, 1.5)],
    },
    "ein-two-cycle": {
        "curves": ("ein_avg/addsub2", "ein_avg/add2_addsub", "ein_avg/add4"),
        "brackets": [(0.2, 0.8), (0.7, 1.5)],
    },
    "dphi-even": {
        "curves": ("dphi/addsub/even", "dphi/add2/even"),
        "brackets": [(0.4, 1.2)],
    },
    "dphi-odd": {
        "curves": ("dphi/addsub/odd", "dphi/add2/odd"),
        "brackets": [(0.9, 1.8)],
    },
}
SQUEEZED_CROSSOVERS = (
    "squeezed-even",
    "squeezed-odd",
    "squeezed-method-even",
    "squeezed-method-odd",
)


@dataclass
class RunConfig:
    """Parsed command invocation, echoed into every output header."""

    command: str
    options: dict = field(default_factory=dict)

    def header_lines(self, cutoff_note: str) -> list[str]:
        opts = " ".join(f"{k}={v}" for k, v in sorted(self.options.items()) if v is not None)
        return [
            f"# nlamp {__version__}",
            f"# config: {self.command} {opts}".rstrip(),
            f"# nmax: {cutoff_note}",
        ]


def parse_range(text: str) -> list[float]:
    """lo:hi:step, inclusive of both ends."""
    try:
        lo_s, hi_s, step_s = text.split(":")
        lo, hi, step = float(lo_s), float(hi_s), float(step_s)
    except ValueError:
        raise InvalidRange(f"expected lo:hi:step, got {text!r}") from None
    if step <= 0.0:
        raise InvalidRange("step must be positive")
    if hi < lo:
        raise InvalidRange("range requires lo <= hi")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + k * step for k in range(n)]


def parse_grid(text: str):
    """xlo:xhi:nx,ylo:yhi:ny"""
    try:
        xpart, ypart = text.split(",")
        xlo, xhi, nx = xpart.split(":")
        ylo, yhi, ny = ypart.split(":")
        spec = (float(xlo), float(xhi), int(nx)), (float(ylo), float(yhi), int(ny))
    except ValueError:
        raise InvalidRange(f"expected xlo:xhi:nx,ylo:yhi:ny, got {text!r}") from None
    for lo, hi, n in spec:
        if hi <= lo or n < 2:
            raise InvalidRange("grid axes need lo < hi and at least 2 nodes")
    return spec


def parse_seqs(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise UsageError("no sequence names given")
    for n in names:
        get_seq(n)
    return names


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _state_spec(args) -> StateSpec:
    kind = STATE_NAMES.get(args.state)
    if kind is None:
        raise UsageError(f"unknown state {args.state!r}; known: {', '.join(STATE_NAMES)}")
    return StateSpec(kind, alpha=args.alpha_value, r=args.r, n=args.n)


def write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _table(config: RunConfig, cutoff_note: str, columns, rows, fmt: str) -> str:
    buf = io.StringIO()
    for line in config.header_lines(cutoff_note):
        buf.write(line + "\n")
    if fmt == "csv":
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        payload = [dict(zip(columns, row)) for row in rows]
        buf.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return buf.getvalue()


def _plot_path(args) -> str | None:
    if not args.plot:
        return None
    if args.out and args.out != "-":
        base = args.out.rsplit(".", 1)[0]
        return base + ".png"
    raise UsageError("--plot needs --out to derive the figure path")


def cmd_sweep(args, config: RunConfig) -> int:
    seqs = parse_seqs(args.seq)
    alphas = parse_range(args.alpha)
    rows = []
    records = []
    for s in sorted(seqs):
        for a in alphas:
            rec = metrics.metric_record(s, a)
            records.append(rec)
            rows.append(
                (rec.seq, rec.alpha_i, rec.f_max, rec.alpha_f_opt, rec.gain,
                 rec.ein_0, rec.ein_avg)
            )
    reserve = max(len(get_seq(s)) for s in seqs)
    note = args.nmax if args.nmax != "auto" else (
        f"auto (input cutoff <= {auto_cutoff(max(alphas) ** 2, reserve)})"
    )
    columns = ("seq", "alpha_i", "f_max", "alpha_f_opt", "gain", "ein_0", "ein_avg")
    write_output(_table(config, str(note), columns, rows, args.format), args.out)
    if (path := _plot_path(args)) is not None:
        from . import plots

        plots.render_sweep(records, path)
    return EXIT_OK


def cmd_scs_sweep(args, config: RunConfig) -> int:
    seqs = parse_seqs(args.seq)
    alphas = parse_range(args.alpha)
    if alphas[0] <= 0.0:
        raise InvalidRange("cat sweeps need strictly positive amplitudes")
    parities = ("even", "odd") if args.parity == "both" else (args.parity,)
    records = []
    for s in sorted(seqs):
        for par in parities:
            records.extend(scs.scs_sweep(s, par, alphas))
    rows = [
        (r.seq, r.parity, r.alpha_i, r.f_max, r.alpha_f_opt, r.gain_scs,
         r.dphi_amplified, r.dphi_bare)
        for r in records
    ]
    mu = max(mean_photons(fock.scs("odd", max(alphas))), max(alphas) ** 2)
    note = args.nmax if args.nmax != "auto" else f"auto (input cutoff <= {auto_cutoff(mu, 2)})"
    columns = ("seq", "parity", "alpha_i", "f_max", "alpha_f_opt", "gain_scs",
               "dphi_amplified", "dphi_bare")
    write_output(_table(config, str(note), columns, rows, args.format), args.out)
    if (path := _plot_path(args)) is not None:
        from . import plots

        plots.render_scs_sweep(records, path)
    return EXIT_OK


def cmd_squeezed_fit(args, config: RunConfig) -> int:
    seqs = parse_seqs(args.seq)
    for s in seqs:
        if s not in squeezed.SQUEEZED_SEQS:
            raise UsageError(f"squeezed-fit supports {squeezed.SQUEEZED_SEQS}, not {s!r}")
    alphas = parse_range(args.alpha)
    if alphas[0] <= 0.0:
        raise InvalidRange("squeezed fits need strictly positive target amplitudes")
    parities = ("even", "odd") if args.parity == "both" else (args.parity,)
    records = []
    for s in sorted(seqs):
        for par in parities:
            records.extend(squeezed.squeezed_sweep(s, par, alphas))
    rows = [
        (r.seq, r.parity, r.alpha_f, r.f_max, r.r_opt, r.squeezing_db)
        for r in records
    ]
    note = args.nmax if args.nmax != "auto" else "auto (grown per squeezing, r <= 3)"
    columns = ("seq", "parity", "alpha_f", "f_max", "r_opt", "squeezing_db")
    write_output(_table(config, str(note), columns, rows, args.format), args.out)
    if (path := _plot_path(args)) is not None:
        from . import plots

        plots.render_squeezed_fit(records, path)
    return EXIT_OK


def _crossover_records(name: str):
    if name in SQUEEZED_CROSSOVERS:
        rec = next(r for r in squeezed.squeezed_crossovers() if r.name == name)
        return [rec.__dict__ | {"bracket": list(rec.bracket)}]
    entry = CROSSOVER_CATALOG[name]
    curves = entry["curves"]

    def curve_fn(label: str):
        parts = label.split("/")
        if parts[0] == "ein_avg":
            return lambda a: metrics.ein_avg(parts[1], a)
        return lambda a: scs.dphi_amplified(parts[1], parts[2], a)

    out = []
    for i, (lo, hi) in enumerate(entry["brackets"]):
        f, g = curve_fn(curves[i]), curve_fn(curves[i + 1])
        br = Bracket(lo, hi, tol_x=1e-6)
        c = find_crossing(f, g, br, scan=32)
        out.append(
            {
                "name": name,
                "curve_a": curves[i],
                "curve_b": curves[i + 1],
                "bracket": [lo, hi],
                "tol_x": br.tol_x,
                "x": c.x,
                "sign_changes": c.count,
            }
        )
    return out


def cmd_crossover(args, config: RunConfig) -> int:
    known = tuple(CROSSOVER_CATALOG) + SQUEEZED_CROSSOVERS
    if args.name not in known:
        raise UsageError(f"unknown crossover {args.name!r}; known: {', '.join(known)}")
    recs = _crossover_records(args.name)
    buf = io.StringIO()
    for line in config.header_lines("auto"):
        buf.write(line + "\n")
    buf.write(json.dumps(recs, indent=2, sort_keys=True) + "\n")
    write_output(buf.getvalue(), args.out)
    return EXIT_OK


def _prepare_state(args):
    spec = _state_spec(args)
    nmax = None if args.nmax == "auto" else int(args.nmax)
    seq = get_seq(args.seq) if args.seq else None
    reserve = len(seq) if seq else 0
    psi = make_state(spec, n_max=nmax, reserve=reserve)
    if seq and len(seq):
        psi, _ = amplify(seq, psi)
    return spec, psi


def cmd_wigner(args, config: RunConfig) -> int:
    (xlo, xhi, nx), (ylo, yhi, ny) = parse_grid(args.grid)
    _, psi = _prepare_state(args)
    grid = wigner.wigner_grid(psi, (xlo, xhi), (ylo, yhi), nx, ny)
    buf = io.StringIO()
    for line in config.header_lines(f"state cutoff {psi.n_max}; displacement adaptive"):
        buf.write(line + "\n")
    buf.write(f"# x: {_fmt(xlo)} {_fmt(xhi)} {nx}\n")
    buf.write(f"# y: {_fmt(ylo)} {_fmt(yhi)} {ny}\n")
    for i in range(ny):
        buf.write(" ".join(_fmt(v) for v in grid[i]) + "\n")
    write_output(buf.getvalue(), args.out)
    if (path := _plot_path(args)) is not None:
        from . import plots

        xs, ys = wigner.grid_axes((xlo, xhi), (ylo, yhi), nx, ny)
        plots.render_wigner(grid, xs, ys, path)
    return EXIT_OK


def cmd_state(args, config: RunConfig) -> int:
    _, psi = _prepare_state(args)
    rows = [(n, c.real, c.imag) for n, c in enumerate(psi.amps)]
    write_output(
        _table(config, str(psi.n_max), ("n", "re", "im"), rows, args.format), args.out
    )
    return EXIT_OK


def cmd_prob(args, config: RunConfig) -> int:
    if not args.seq:
        raise UsageError("prob needs --seq")
    spec, _ = _state_spec(args), None
    nmax = None if args.nmax == "auto" else int(args.nmax)
    seq = get_seq(args.seq)
    psi = make_state(spec, n_max=nmax, reserve=len(seq))
    params = HeraldParams(args.lambda_g, args.reflectivity)
    total, per_step = success_probability(seq, psi, params)
    first_order = first_order_success_probability(seq, psi, params)
    report = {
        "seq": seq.name,
        "ops": list(seq.ops),
        "state": args.state,
        "alpha": args.alpha_value,
        "lambda_g": params.lambda_g,
        "reflectivity": params.reflectivity,
        "approximation_warning": params.approximation_warning,
        "total": total,
        "per_step": per_step,
        "first_order_total": first_order,
    }
    buf = io.StringIO()
    for line in config.header_lines("auto" if nmax is None else str(nmax)):
        buf.write(line + "\n")
    if args.format == "csv":
        buf.write("step,op,probability\n")
        for i, (op, p) in enumerate(zip(seq.ops, per_step), start=1):
            buf.write(f"{i},{op},{_fmt(p)}\n")
        buf.write(f"total,,{_fmt(total)}\n")
        buf.write(f"first_order,,{_fmt(first_order)}\n")
    else:
        buf.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    write_output(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    results = verify.run_all()
    npass, nwarn, nfail = verify.summarize(results)
    buf = io.StringIO()
    if args.format == "json":
        for line in config.header_lines("auto"):
            buf.write(line + "\n")
        buf.write(
            json.dumps([r.__dict__ for r in results], indent=2, sort_keys=True) + "\n"
        )
    else:
        for r in results:
            buf.write(f"{r.status} {r.name}: {r.detail}\n")
        buf.write(f"verify: {npass} passed, {nwarn} warnings, {nfail} failures\n")
    write_output(buf.getvalue(), args.out)
    return EXIT_VERIFY_FAIL if nfail else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nlamp", description=__doc__)
    p.add_argument("--version", action="version", version=f"nlamp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, alpha_default=None, seq_default=None):
        sp.add_argument("--seq", default=seq_default,
                        help="comma-separated sequence names "
                             f"({', '.join(SEQ_CATALOG)})")
        sp.add_argument("--alpha", default=alpha_default, help="lo:hi:step amplitude range")
        sp.add_argument("--lambda", dest="lam", type=float, default=0.0,
                        help="quadrature phase")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--nmax", default="auto", help="auto or a fixed Fock cutoff")
        sp.add_argument("--plot", action="store_true",
                        help="also render a PNG figure next to --out")

    sp = sub.add_parser("sweep", help="coherent-input metric sweep")
    common(sp, alpha_default="0:3:0.05", seq_default="addsub,add2")
    sp.add_argument("--preset", choices=("fig1", "fig3"))

    sp = sub.add_parser("scs-sweep", help="cat-state metric sweep")
    common(sp, alpha_default="0.05:4:0.05", seq_default="addsub,add2")
    sp.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    sp.add_argument("--preset", choices=("fig4",))

    sp = sub.add_parser("squeezed-fit", help="squeezed-state cat approximation sweep")
    common(sp, alpha_default="0.05:3.5:0.05", seq_default="identity,addsub,add2")
    sp.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    sp.add_argument("--preset", choices=("fig5",))

    sp = sub.add_parser("crossover", help="locate a named curve crossing")
    sp.add_argument("--name", required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="json")

    for name, hlp in (("wigner", "phase-space grid"), ("state", "dump amplitudes"),
                      ("prob", "heralding success probability")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--state", default="coherent",
                        help=f"state kind ({', '.join(STATE_NAMES)})")
        sp.add_argument("--alpha", dest="alpha_value", type=float, default=0.0,
                        help="state amplitude")
        sp.add_argument("--r", type=float, default=0.0, help="squeezing parameter")
        sp.add_argument("--n", type=int, default=0, help="photon number")
        sp.add_argument("--seq", default=None, help="optional amplification sequence")
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("csv", "json"),
                        default="json" if name == "prob" else "csv")
        sp.add_argument("--nmax", default="auto")
        if name == "wigner":
            sp.add_argument("--grid", default="-3:3:61,-3:3:61",
                            help="xlo:xhi:nx,ylo:yhi:ny")
            sp.add_argument("--plot", action="store_true")
        if name == "prob":
            sp.add_argument("--lambda-g", dest="lambda_g", type=float, default=0.1)
            sp.add_argument("--reflectivity", type=float, default=0.05)

    sp = sub.add_parser("verify", help="closed-form vs numeric oracle suite")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _apply_preset(args) -> None:
    preset = getattr(args, "preset", None)
    if not preset:
        return
    entry = PRESETS[preset]
    if entry["command"] != args.command:
        raise UsageError(f"preset {preset} belongs to the {entry['command']} command")
    for key, value in entry.items():
        if key != "command":
            setattr(args, key, value)


COMMANDS = {
    "sweep": cmd_sweep,
    "scs-sweep": cmd_scs_sweep,
    "squeezed-fit": cmd_squeezed_fit,
    "crossover": cmd_crossover,
    "wigner": cmd_wigner,
    "state": cmd_state,
    "prob": cmd_prob,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _apply_preset(args)
    config = RunConfig(
        command=args.command,
        options={
            k: v
            for k, v in vars(args).items()
            if k not in ("command", "out", "plot") and v is not None
        },
    )
    try:
        nmax = getattr(args, "nmax", "auto")
        if nmax != "auto":
            with fock.fixed_cutoff(int(nmax)):
                return COMMANDS[args.command](args, config)
        return COMMANDS[args.command](args, config)
    except UsageError as exc:
        print(f"nlamp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"nlamp: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except NlampError as exc:
        print(f"nlamp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
