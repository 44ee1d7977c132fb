"""Command-line front end.

Subcommands (all file-based, reproducible under --seed where randomness is
involved):

    bh             plug-in BH on a data file (explicit or estimated scaling)
    estimate-null  robust location/scale estimates
    gof            goodness-of-fit test for one null or a null family
    region         scaling-region scan, written as a heatmap CSV
    mixture        solve a least-favorable mixture, print JSON
    simulate       run a scenario config, write metrics CSV + JSON
    constants      boundary constants and inflation grids as JSON

Exit codes: 0 success, 1 usage or parse error, 2 numerical-domain error.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .confidence import RegionSpec, default_region_spec, gof_test_family, gof_test_single, scaling_region_scan
from .dist import gaussian_model, laplace_model, subbotin_model, tabulated_model
from .mixtures import (NoRootError, boundary_constants, general_location_mixture,
                       laplace_inflation, solve_location_mixture, solve_variance_mixture)
from .scaling import estimate_scaling, mad_estimate, median_estimate, trimmed_mean_estimate
from .simulate import ScenarioConfig, run_experiment
from .testing import DegenerateScaleError, bh_from_pvalues, rescaled_pvalues


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def read_data_file(path):
    """One real per line, or a single-column CSV (optional header row)."""
    values = []
    try:
        fh = open(path)
    except OSError as exc:
        raise UsageError(f"cannot open data file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            token = line.strip().rstrip(",")
            if not token:
                continue
            if "," in token:
                raise UsageError(f"{path}:{lineno}: expected a single column")
            try:
                values.append(float(token))
            except ValueError:
                if lineno == 1:  # tolerate a header row
                    continue
                raise UsageError(f"{path}:{lineno}: not a number: {token!r}") from None
    if not values:
        raise UsageError(f"{path}: no numeric rows")
    return np.asarray(values)


def _fmt(x):
    return repr(float(x))


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _null_model(args):
    fam = args.family
    if fam == "gaussian":
        return gaussian_model(args.theta, args.sigma)
    if fam == "subbotin":
        if args.zeta is None:
            raise UsageError("subbotin family requires --zeta")
        return subbotin_model(args.zeta, args.theta)
    if fam == "laplace":
        return laplace_model(args.theta)
    if fam == "tabulated":
        if not args.table:
            raise UsageError("tabulated family requires --table")
        raw = read_table_file(args.table)
        return tabulated_model(*raw)
    raise UsageError(f"unknown family {fam!r}")


def read_table_file(path):
    """Two-column CSV x,F describing a nondecreasing cdf."""
    xs, fs = [], []
    try:
        fh = open(path)
    except OSError as exc:
        raise UsageError(f"cannot open table file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            token = line.strip()
            if not token:
                continue
            parts = token.split(",")
            if len(parts) != 2:
                raise UsageError(f"{path}:{lineno}: expected two columns x,F")
            try:
                xs.append(float(parts[0]))
                fs.append(float(parts[1]))
            except ValueError:
                if lineno == 1:
                    continue
                raise UsageError(f"{path}:{lineno}: not numeric: {token!r}") from None
    return np.asarray(xs), np.asarray(fs)


# -- subcommands ---------------------------------------------------------------


def cmd_bh(args):
    y = read_data_file(args.data)
    alpha = args.alpha
    if args.pvalues:
        rej = bh_from_pvalues(y, alpha)
        p = np.asarray(y, dtype=float)
        u, s = float("nan"), float("nan")
    else:
        if args.estimate:
            sc = estimate_scaling(y)
            if sc.is_degenerate:
                raise DegenerateScaleError("estimated scale is zero (constant sample)")
            u, s = sc.theta_hat, sc.sigma_hat
        else:
            if args.u is None or args.s is None:
                raise UsageError("provide --u and --s, or --estimate, or --pvalues")
            u, s = args.u, args.s
        model = _null_model(args)
        pv = rescaled_pvalues(y, u, s, model)
        p = pv.p
        rej = bh_from_pvalues(pv, alpha)
    rejected = set(rej.indices.tolist())
    if args.format == "json":
        payload = {
            "alpha": alpha, "u": u, "s": s,
            "threshold": rej.threshold,
            "n": int(p.size),
            "rejected_lines": [i + 1 for i in sorted(rejected)],
            "p_values": [float(v) for v in p],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        lines = ["line,p_value,rejected"]
        lines += [f"{i + 1},{_fmt(p[i])},{int(i in rejected)}" for i in range(p.size)]
        lines += [f"# threshold,{_fmt(rej.threshold)}", f"# alpha,{_fmt(alpha)}"]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_estimate_null(args):
    y = read_data_file(args.data)
    theta = median_estimate(y) if args.location == "median" else trimmed_mean_estimate(y, 0.5)
    sigma = mad_estimate(y)
    payload = {"location": args.location, "theta_hat": theta,
               "sigma_hat": sigma, "sigma2_hat": sigma * sigma,
               "degenerate_scale": sigma == 0.0}
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def cmd_gof(args):
    y = read_data_file(args.data)
    if args.grid_theta or args.grid_sigma2:
        if args.family != "gaussian":
            raise UsageError("family grids are supported for the gaussian family")
        thetas = _parse_grid(args.grid_theta, "--grid-theta")
        sigma2s = _parse_grid(args.grid_sigma2, "--grid-sigma2")
        models = [gaussian_model(t, math.sqrt(s2)) for t in thetas for s2 in sigma2s]
        reject = gof_test_family(y, models, args.k, args.alpha)
        payload = {"test": "family", "family": args.family, "k": args.k,
                   "alpha": args.alpha, "grid_size": len(models), "reject": reject}
    else:
        model = _null_model(args)
        reject = gof_test_single(y, model, args.k, args.alpha)
        payload = {"test": "single", "family": args.family, "theta": args.theta,
                   "sigma": args.sigma, "k": args.k, "alpha": args.alpha, "reject": reject}
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def _parse_grid(spec, flag):
    if not spec:
        raise UsageError(f"{flag} is required for a family test (min,max,steps)")
    parts = spec.split(",")
    if len(parts) != 3:
        raise UsageError(f"{flag} expects min,max,steps")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1:
        raise UsageError(f"{flag}: steps must be >= 1")
    return np.linspace(lo, hi, steps)


def cmd_region(args):
    y = read_data_file(args.data)
    if args.grid_theta and args.grid_sigma2:
        spec = RegionSpec(k=args.k, alpha=args.alpha,
                          thetas=_parse_grid(args.grid_theta, "--grid-theta"),
                          sigma2s=_parse_grid(args.grid_sigma2, "--grid-sigma2"))
    else:
        spec = default_region_spec(y, args.k, args.alpha, resolution=args.resolution)
    grid = scaling_region_scan(y, spec)
    grid.to_csv(args.output)
    n_in = int(grid.in_region.sum())
    sys.stdout.write(f"{n_in} of {grid.in_region.size} cells in the region; wrote {args.output}\n")
    return 0


def cmd_mixture(args):
    if args.kind == "variance":
        inst = solve_variance_mixture(args.pi1, args.pi2 if args.pi2 is not None else args.pi1)
        key = "sigma2"
    elif args.kind == "location":
        inst = solve_location_mixture(args.pi1, args.pi2 if args.pi2 is not None else args.pi1)
        key = "mu"
    elif args.kind == "general":
        if args.family == "laplace":
            g = laplace_model()
        elif args.family == "subbotin":
            if args.zeta is None:
                raise UsageError("general subbotin mixture requires --zeta")
            g = subbotin_model(args.zeta)
        else:
            g = gaussian_model()
        inst = general_location_mixture(g, args.pi1)
        key = "mu"
    else:
        raise UsageError(f"unknown mixture kind {args.kind!r}")
    payload = {"kind": inst.kind, "pi1": inst.pi1, "pi2": inst.pi2,
               key: inst.solved_param, "u0": inst.u0, "residual": inst.residual}
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def cmd_simulate(args):
    cfg = ScenarioConfig.from_json(args.config)
    if args.seed is not None:
        cfg = ScenarioConfig(**{**cfg.__dict__, "seed": args.seed})
    methods = tuple(args.methods.split(",")) if args.methods else ("oracle", "median_mad")
    report = run_experiment(cfg, methods)
    report.to_csv(args.output_prefix + ".csv")
    report.to_json(args.output_prefix + ".json")
    sys.stdout.write(f"wrote {args.output_prefix}.csv and {args.output_prefix}.json\n")
    return 0


def cmd_constants(args):
    pi_a, pi_star = boundary_constants(args.alpha)
    grid = np.linspace(0.005, 0.49, args.grid_points)
    rows = []
    for pi in grid:
        eta, zeta = laplace_inflation(float(pi))
        rows.append({"pi": float(pi), "eta": eta, "zeta": zeta})
    payload = {"alpha": args.alpha, "pi_alpha": pi_a, "pi_star_alpha": pi_star,
               "laplace_inflation_grid": rows}
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


# -- parser --------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="fdrlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"fdrlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, data=True):
        if data:
            sp.add_argument("--data", required=True, help="one value per line or single-column CSV")
        sp.add_argument("--output", default=None, help="output path (default stdout)")

    sp = sub.add_parser("bh", help="plug-in BH procedure")
    add_common(sp)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--u", type=float, default=None, help="plugged location")
    sp.add_argument("--s", type=float, default=None, help="plugged scale (inf allowed)")
    sp.add_argument("--estimate", action="store_true", help="use the median/MAD scaling")
    sp.add_argument("--pvalues", action="store_true", help="input file already holds p-values")
    sp.add_argument("--family", default="gaussian",
                    choices=["gaussian", "subbotin", "laplace"])
    sp.add_argument("--zeta", type=float, default=None)
    sp.add_argument("--format", default="csv", choices=["csv", "json"])
    sp.set_defaults(theta=0.0, sigma=1.0, table=None, func=cmd_bh)

    sp = sub.add_parser("estimate-null", help="robust scaling estimates")
    add_common(sp)
    sp.add_argument("--location", default="median", choices=["median", "trimmed"])
    sp.set_defaults(func=cmd_estimate_null)

    sp = sub.add_parser("gof", help="goodness-of-fit test for a null or family")
    add_common(sp)
    sp.add_argument("--k", type=int, required=True, help="contamination bound")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--family", default="gaussian",
                    choices=["gaussian", "subbotin", "laplace", "tabulated"])
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--sigma", type=float, default=1.0)
    sp.add_argument("--zeta", type=float, default=None)
    sp.add_argument("--table", default=None, help="two-column CSV x,F for a tabulated cdf")
    sp.add_argument("--grid-theta", default=None, help="min,max,steps (family test)")
    sp.add_argument("--grid-sigma2", default=None, help="min,max,steps (family test)")
    sp.set_defaults(func=cmd_gof)

    sp = sub.add_parser("region", help="scaling-region heatmap CSV")
    sp.add_argument("--data", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--grid-theta", default=None, help="min,max,steps")
    sp.add_argument("--grid-sigma2", default=None, help="min,max,steps")
    sp.add_argument("--resolution", type=int, default=60)
    sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("mixture", help="solve a least-favorable mixture")
    sp.add_argument("--kind", required=True, choices=["variance", "location", "general"])
    sp.add_argument("--pi1", type=float, required=True)
    sp.add_argument("--pi2", type=float, default=None)
    sp.add_argument("--family", default="gaussian",
                    choices=["gaussian", "subbotin", "laplace"])
    sp.add_argument("--zeta", type=float, default=None)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_mixture)

    sp = sub.add_parser("simulate", help="run a scenario config")
    sp.add_argument("--config", required=True, help="ScenarioConfig JSON")
    sp.add_argument("--output-prefix", required=True)
    sp.add_argument("--methods", default=None, help="comma list from the registry")
    sp.add_argument("--seed", type=int, default=None, help="override the config seed")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("constants", help="boundary constants as JSON")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--grid-points", type=int, default=100)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_constants)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"fdrlab: error: {exc}\n")
        return 1
    except (json.JSONDecodeError, FileNotFoundError, OSError, TypeError) as exc:
        sys.stderr.write(f"fdrlab: error: {exc}\n")
        return 1
    except (DegenerateScaleError, NoRootError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"fdrlab: numerical error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
