"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from . import GENERATED_BY
from .coherent import (
    CoherentSpec,
    GlauberSpec,
    classical_trajectory,
    evolve_coherent,
)
from .errors import OscillatorError
from .fields import (
    GridSpec,
    sample_coherent_density,
    sample_density,
    sample_superposition_density,
    summarize,
)
from .formats import atomic_write, fmt, grid_to_csv, grid_to_json, table_to_csv, table_to_json
from .oscillator import EigenState, eval_eigenstate, potential_polar_magnitude
from .quadrature import DEFAULT_ORDER, MAX_ORDER
from .verify import run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FIG1_LAMBDAS = (0.0, 0.5, 1.0, 2.0, 3.0)
FIG2_STATES = ((0, 0), (0, 1), (1, 0), (1, 1))
FIG2_LAMBDAS = (0.0, 1.5)
FIG3_LAMBDAS = (0.0, 0.5, 1.0, 1.5, 2.0)
FIG3_X = (0.0, 1.0)
# panel parameters are not listed in the figure captions; these sweep the
# three knobs (lambda, A, theta) around the vortex configuration A=1, theta=pi/2
COHERENT_PANELS = tuple(
    (lam, a, theta)
    for lam in (0.0, 1.0, 2.0)
    for a, theta in ((1.0, math.pi / 2), (0.5, math.pi / 2), (1.0, 0.0))
)


class UsageError(Exception):
    pass


def float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def grid_arg(text):
    parts = text.split(",")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("--grid takes x0,x1,y0,y1,nx,ny")
    try:
        x0, x1, y0, y1 = (float(p) for p in parts[:4])
        nx, ny = int(parts[4]), int(parts[5])
        return GridSpec(x0, x1, y0, y1, nx, ny)
    except (ValueError, OscillatorError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output file (tables) or directory (grids)")
    common.add_argument("--quad-order", type=int, default=DEFAULT_ORDER)
    common.add_argument("--emit-plot-script", action="store_true",
                        help="also write a matplotlib script that plots the emitted data")
    gridded = argparse.ArgumentParser(add_help=False)
    gridded.add_argument("--grid", type=grid_arg, default=GridSpec(),
                         help="x0,x1,y0,y1,nx,ny (default -5,5,-5,5,201,201)")

    parser = argparse.ArgumentParser(
        prog="ptosc", description="Complexified 2D harmonic oscillator: data and checks.")
    parser.add_argument("--version", action="version", version=GENERATED_BY)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("potential", parents=[common], help="|V| against polar angle")
    p.add_argument("--lambda", dest="lambdas", type=float_list)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--phi-samples", type=int, default=361)
    p.add_argument("--fig1", action="store_true")

    p = sub.add_parser("density", parents=[common, gridded], help="(psi_nm)^2 grids")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--lambda", dest="lambdas", type=float_list)
    p.add_argument("--fig2", action="store_true")

    p = sub.add_parser("slice", parents=[common, gridded], help="Re[(psi_00)^2] against y")
    p.add_argument("--lambda", dest="lambdas", type=float_list)
    p.add_argument("--x", dest="x_values", type=float_list)
    p.add_argument("--fig3", action="store_true")

    p = sub.add_parser("coherent", parents=[common, gridded], help="(Phi_N)^2 grids")
    p.add_argument("--N", dest="n_total", type=int)
    p.add_argument("--A", dest="amplitude", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--lambda", dest="lambdas", type=float_list)
    preset = p.add_mutually_exclusive_group()
    preset.add_argument("--fig4", action="store_true")
    preset.add_argument("--fig5", action="store_true")

    p = sub.add_parser("evolve", parents=[common, gridded], help="time-evolved Glauber state")
    p.add_argument("--beta", type=float, default=0.8)
    p.add_argument("--gamma", type=float, default=0.8)
    p.add_argument("--theta-x", type=float, default=0.0)
    p.add_argument("--theta-y", type=float, default=math.pi / 2)
    p.add_argument("--cutoff", type=int, default=12)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--t", dest="times", type=float_list, default=[0.0, math.pi / 2, math.pi])
    p.add_argument("--paper-literal-decay", action="store_true",
                   help="use the real factor exp(-(N+1)t) instead of the unitary phase")

    p = sub.add_parser("classical", parents=[common], help="classical trajectory samples")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--theta-x", type=float, default=0.0)
    p.add_argument("--theta-y", type=float, default=math.pi / 2)
    p.add_argument("--t-max", type=float, default=2 * math.pi)
    p.add_argument("--steps", type=int, default=201)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("--max-index", type=int, default=4)
    p.add_argument("--lambda", dest="lambdas", type=float_list)
    return parser


# ---------------------------------------------------------------- tables


def potential_table(lambdas, r=1.0, phi_samples=361):
    if phi_samples < 8:
        raise UsageError("--phi-samples must be >= 8")
    phi = np.linspace(0.0, 2 * math.pi, phi_samples)
    cols = [potential_polar_magnitude(r, phi, lam) for lam in lambdas]
    columns = ["phi"] + [f"lambda={fmt(lam)}" for lam in lambdas]
    rows = [[phi[i]] + [c[i] for c in cols] for i in range(phi_samples)]
    return columns, rows


def slice_table(lambdas, x_values, ys):
    columns = ["y"]
    cols = []
    for lam in lambdas:
        state = EigenState(0, 0, lam)
        for x in x_values:
            psi = eval_eigenstate(state, x, ys)
            cols.append((psi * psi).real)
            columns.append(f"lambda={fmt(lam)};x={fmt(x)}")
    rows = [[ys[j]] + [c[j] for c in cols] for j in range(len(ys))]
    return columns, rows


def classical_table(args):
    traj = classical_trajectory(args.beta, args.gamma, args.theta_x, args.theta_y,
                                args.t_max, args.steps)
    rows = [[t, x, y] for t, x, y in zip(traj.times, traj.xs, traj.ys)]
    return ["t", "x", "y"], rows


def _emit_table(args, name, columns, rows, meta=None):
    render = table_to_csv if args.format == "csv" else table_to_json
    text = render(name, columns, rows, meta)
    if args.out:
        atomic_write(args.out, text)
        if args.emit_plot_script:
            script = os.path.splitext(args.out)[0] + "_plot.py"
            atomic_write(script, table_plot_script(os.path.basename(args.out), args.format))
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- grids


def _out_dir(args):
    return args.out or os.path.join("ptosc-output", args.subcommand)


def _write_grids(args, named_grids, extra=None):
    out = _out_dir(args)
    ext = args.format
    index = {"generated_by": GENERATED_BY, "subcommand": args.subcommand, "panels": []}
    for stem, grid in named_grids:
        fname = f"{stem}.{ext}"
        text = grid_to_csv(grid) if ext == "csv" else grid_to_json(grid)
        atomic_write(os.path.join(out, fname), text)
        index["panels"].append({"file": fname, "params": grid.params,
                                "summary": summarize(grid)})
    if extra:
        index.update(extra)
    atomic_write(os.path.join(out, "index.json"), json.dumps(index, indent=1) + "\n")
    if args.emit_plot_script:
        atomic_write(os.path.join(out, "plot_grids.py"), GRID_PLOT_SCRIPT)
    return index


def density_panels(args):
    if args.fig2:
        states, lambdas = FIG2_STATES, FIG2_LAMBDAS
    else:
        if args.n is None and args.m is None:
            states = FIG2_STATES
        else:
            states = [(args.n or 0, args.m or 0)]
        lambdas = args.lambdas or FIG2_LAMBDAS
    panels = []
    for lam in lambdas:
        for n, m in states:
            grid = sample_density(EigenState(n, m, lam), args.grid)
            panels.append((f"density_n{n}_m{m}_lambda{fmt(lam)}", grid))
    return panels


def coherent_panels(args):
    if args.fig4 or args.fig5:
        n_total = 3 if args.fig4 else 12
        combos = COHERENT_PANELS
    else:
        n_total = 3 if args.n_total is None else args.n_total
        a = 1.0 if args.amplitude is None else args.amplitude
        theta = math.pi / 2 if args.theta is None else args.theta
        combos = [(lam, a, theta) for lam in (args.lambdas or [0.0])]
    panels = []
    for k, (lam, a, theta) in enumerate(combos):
        grid = sample_coherent_density(CoherentSpec(n_total, a, theta, lam), args.grid)
        panels.append((f"coherent_N{n_total}_panel{k:02d}", grid))
    return panels


def run_evolve(args):
    spec = GlauberSpec(args.beta, args.gamma, args.theta_x, args.theta_y, args.cutoff)
    out = _out_dir(args)
    grids, norms = [], []
    for k, t in enumerate(args.times):
        coeffs = evolve_coherent(spec, t, args.paper_literal_decay)
        rows = [[n, m, c.real, c.imag] for (n, m), c in coeffs.items()]
        render = table_to_csv if args.format == "csv" else table_to_json
        atomic_write(os.path.join(out, f"coefficients_t{k:02d}.{args.format}"),
                     render("coefficients", ["n", "m", "re", "im"], rows, {"t": fmt(t)}))
        norms.append({"t": t, "norm": math.fsum(abs(c) ** 2 for c in coeffs.values())})
        params = {"t": t, "beta": args.beta, "gamma": args.gamma}
        grid = sample_superposition_density(coeffs, args.lam, args.grid, params)
        grids.append((f"evolve_t{k:02d}", grid))
    return _write_grids(args, grids, {
        "paper_literal_decay": args.paper_literal_decay,
        "tail_mass": spec.tail_mass(),
        "norms": norms,
    })


# ---------------------------------------------------------------- plot scripts


GRID_PLOT_SCRIPT = '''"""Render every grid listed in index.json to PNG (requires matplotlib)."""
import json
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))


def load(path):
    if path.endswith(".json"):
        with open(path) as fh:
            doc = json.load(fh)
        s = doc["spec"]
        v = np.array(doc["values"]).reshape(s["nx"], s["ny"], 2)
        return s, v[..., 0] + 1j * v[..., 1]
    with open(path) as fh:
        meta = dict(kv.split("=", 1) for kv in fh.readline()[1:].split())
    s = {k: float(meta[k]) for k in ("x_min", "x_max", "y_min", "y_max")}
    s["nx"], s["ny"] = int(meta["nx"]), int(meta["ny"])
    d = np.loadtxt(path, delimiter=",", comments="#")
    re = d[:, 2].reshape(s["ny"], s["nx"]).T
    im = d[:, 3].reshape(s["ny"], s["nx"]).T
    return s, re + 1j * im


with open(os.path.join(HERE, "index.json")) as fh:
    index = json.load(fh)
for panel in index["panels"]:
    s, values = load(os.path.join(HERE, panel["file"]))
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))
    extent = [s["x_min"], s["x_max"], s["y_min"], s["y_max"]]
    for ax, (label, data) in zip(axes, (("Re", values.real), ("Im", values.imag),
                                        ("abs2", np.abs(values) ** 2))):
        im = ax.imshow(data.T, origin="lower", extent=extent, cmap="RdBu_r")
        ax.set_title(label)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        fig.colorbar(im, ax=ax, shrink=0.8)
    fig.suptitle(panel["file"])
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, os.path.splitext(panel["file"])[0] + ".png"), dpi=120)
    plt.close(fig)
'''


def table_plot_script(fname, ext):
    return f'''"""Plot every column of {fname} against the first (requires matplotlib)."""
import json
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
path = os.path.join(HERE, "{fname}")
if path.endswith(".json"):
    with open(path) as fh:
        doc = json.load(fh)
    columns, data = doc["columns"], np.array(doc["rows"], dtype=float)
else:
    with open(path) as fh:
        fh.readline()
        columns = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=2)
fig, ax = plt.subplots(figsize=(6, 4))
for k, name in enumerate(columns[1:], start=1):
    ax.plot(data[:, 0], data[:, k], label=name)
ax.set_xlabel(columns[0])
ax.legend(fontsize="small")
fig.tight_layout()
fig.savefig(os.path.splitext(path)[0] + ".png", dpi=120)
'''


# ---------------------------------------------------------------- dispatch


def run(args):
    if not 1 <= args.quad_order <= MAX_ORDER:
        raise UsageError(f"--quad-order must lie in [1, {MAX_ORDER}]")
    cmd = args.subcommand
    if cmd == "potential":
        lambdas = FIG1_LAMBDAS if args.fig1 or not args.lambdas else args.lambdas
        columns, rows = potential_table(lambdas, args.r, args.phi_samples)
        _emit_table(args, "potential_abs", columns, rows, {"r": fmt(args.r)})
    elif cmd == "density":
        _write_grids(args, density_panels(args))
    elif cmd == "slice":
        lambdas = FIG3_LAMBDAS if args.fig3 or not args.lambdas else args.lambdas
        x_values = FIG3_X if args.fig3 or not args.x_values else args.x_values
        columns, rows = slice_table(lambdas, x_values, args.grid.ys)
        _emit_table(args, "slice_re_density_00", columns, rows)
    elif cmd == "coherent":
        _write_grids(args, coherent_panels(args))
    elif cmd == "evolve":
        run_evolve(args)
    elif cmd == "classical":
        columns, rows = classical_table(args)
        _emit_table(args, "classical_trajectory", columns, rows)
    elif cmd == "verify":
        report = run_verification(args.max_index, tuple(args.lambdas or (0.0, 1.0, 2.5)),
                                  args.quad_order)
        text = json.dumps(report, indent=1) + "\n"
        if args.out:
            atomic_write(args.out, text)
        else:
            sys.stdout.write(text)
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        if failed:
            sys.stderr.write("verification failed: " + ", ".join(failed) + "\n")
            return EXIT_VERIFY
    return EXIT_OK


_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _attach_negative_values(argv):
    # argparse reads "--grid -5,5,..." as two options; glue such pairs with "="
    out = []
    for tok in argv:
        if out and _NEGATIVE_VALUE.match(tok) and out[-1].startswith("--") \
                and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        return run(args)
    except (UsageError, OscillatorError) as exc:
        sys.stderr.write(f"ptosc: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"ptosc: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
