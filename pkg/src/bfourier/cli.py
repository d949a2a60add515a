"""Command-line front end.

Subcommands:

  verify     run named verification suites, emit a JSON report
  kernel     tabulate B / Lambda / heat kernels on a grid of (x, y) pairs
  transform  apply the deformed Fourier transform to a builtin function or
             CSV samples, spectrally and/or by quadrature
  evolve     run the N=1 wave evolution, the heat semigroup, or the
             Hermite-type semigroup realization of the transform

Exit codes: 0 success, 1 suite failure, 2 usage/config error.
CSV point format: header row, then x1..xN followed by re, im columns.
"""

import argparse
import cmath
import contextlib
import csv
import io
import json
import math
import sys

import numpy as np

from .params import DeformationParams
from . import kernels, pointwise, spectral, verify
from .spectral import BasisIndex, SpectralBasis, fourier_factor, phi_eval


class ConfigError(Exception):
    pass


_TYPES = {"b": float, "N": int, "L": int, "M": int, "tol": float, "seed": int, "route": str}


def load_config(path):
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"bad config line: {line!r}")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key not in _TYPES:
                raise ConfigError(f"unknown config key: {key}")
            out[key] = _TYPES[key](val)
    return out


def build_config(args):
    cfg = {"b": 0.5, "N": 2, "L": 24, "M": 6, "tol": None, "route": None, "seed": 42}
    if getattr(args, "config", None):
        cfg.update(load_config(args.config))
    for key in _TYPES:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if not cfg["N"] in (1, 2, 3, 4):
        raise ConfigError("N must be in 1..4")
    if cfg["b"] <= -cfg["N"] / 2:
        raise ConfigError(f"b must exceed -N/2 = {-cfg['N'] / 2}")
    if cfg["tol"] is not None and cfg["tol"] <= 0:
        raise ConfigError("tol must be positive")
    return cfg


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", newline="")
    return contextlib.nullcontext(sys.stdout)


def _parse_range(spec):
    """'min:max:count' -> 1-D array."""
    try:
        lo, hi, n = spec.split(":")
        return np.linspace(float(lo), float(hi), int(n))
    except ValueError as exc:
        raise ConfigError(f"bad range spec {spec!r}, expected min:max:count") from exc


def _read_points_csv(path, N):
    pts = []
    vals = []
    with open(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        for row in reader:
            if not row:
                continue
            pts.append([float(v) for v in row[:N]])
            if len(row) >= N + 2:
                vals.append(complex(float(row[N]), float(row[N + 1])))
    return np.array(pts).reshape(-1, N), (np.array(vals) if vals else None)


def _write_rows(fh, header, rows):
    writer = csv.writer(fh)
    writer.writerow(header)
    writer.writerows(rows)


# ---------------------------------------------------------------------------


def cmd_verify(args):
    cfg = build_config(args)
    names = sorted(args.suites) if args.suites else None
    try:
        results = verify.run_suites(cfg, names)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    report = [r.as_dict() for r in results]
    if args.tol is not None:
        for rec in report:
            rec["pass"] = rec["max_err"] <= args.tol
    payload = json.dumps(report, indent=2, sort_keys=True)
    with _open_out(args) as fh:
        fh.write(payload + "\n")
    return 0 if all(rec["pass"] for rec in report) else 1


def cmd_kernel(args):
    cfg = build_config(args)
    p = DeformationParams(cfg["b"], cfg["N"])
    N = p.N
    if args.pairs:
        X, _ = _read_points_csv(args.pairs, 2 * N)
        pairs = [(row[:N], row[N:]) for row in X]
    elif N == 1:
        xs = _parse_range(args.x)
        ys = _parse_range(args.y)
        pairs = [(np.array([x]), np.array([y])) for x in xs for y in ys]
    else:
        raise ConfigError("N > 1 kernel tabulation needs --pairs CSV (x1..xN,y1..yN)")
    which = args.which
    t = args.t
    if which in ("Lambda", "heat") and t is None:
        raise ConfigError(f"--t is required for {which}")
    rows = []
    for x, y in pairs:
        if which == "B":
            v = kernels.B_kernel(p, x, y)
        elif which == "Lambda":
            v = kernels.lambda_kernel(p, x, y, t)
        else:
            v = kernels.heat_kernel(p, x, y, t)
        rows.append([*x, *y, v.real, v.imag])
    header = [f"x{i + 1}" for i in range(N)] + [f"y{i + 1}" for i in range(N)] + ["re", "im"]
    with _open_out(args) as fh:
        _write_rows(fh, header, rows)
    return 0


def _builtin_function(name, p, basis):
    if name == "gaussian":
        return lambda y: math.exp(-float(np.sum(np.asarray(y) ** 2)) / 2), None
    if name.startswith("phi:"):
        try:
            ell, m, j = (int(v) for v in name.split(":")[1:])
        except ValueError as exc:
            raise ConfigError("builtin phi spec is phi:ell:m:j") from exc
        idx = BasisIndex(ell, m, j)
        return (lambda y: phi_eval(p, idx, y, basis=basis)), idx
    raise ConfigError(f"unknown builtin function {name!r}")


def _decay_check(vals, radii):
    """Flag inputs that do not visibly decay: compare the outer-shell
    magnitude to the overall scale."""
    scale = float(np.max(np.abs(vals)))
    if scale == 0:
        return
    outer = radii >= np.quantile(radii, 0.9)
    if float(np.max(np.abs(vals[outer]))) > 1e-3 * scale:
        raise ConfigError("insufficient decay: outer samples are not small, transform quadrature unreliable")


def cmd_transform(args):
    cfg = build_config(args)
    p = DeformationParams(cfg["b"], cfg["N"])
    basis = SpectralBasis(p, L=cfg["L"], M=cfg["M"] if p.N > 1 else 1)
    rule = kernels.default_transform_rule(p)
    if args.emit_nodes:
        header = [f"x{i + 1}" for i in range(p.N)] + ["re", "im"]
        with _open_out(args) as fh:
            _write_rows(fh, header, [[*y, 0.0, 0.0] for y in rule.nodes])
        return 0
    if args.function:
        f, _ = _builtin_function(args.function, p, basis)
    elif getattr(args, "in_path", None):
        pts, vals = _read_points_csv(args.in_path, p.N)
        if vals is None:
            raise ConfigError("input CSV must carry re,im sample columns")
        _decay_check(vals, np.linalg.norm(pts, axis=1))
        table = {tuple(np.round(q, 12)): v for q, v in zip(pts, vals)}

        def f(y):
            key = tuple(np.round(np.asarray(y, dtype=float), 12))
            if key not in table:
                raise ConfigError(
                    "CSV samples must be given on the transform rule nodes "
                    "(run with --emit-nodes to obtain them)"
                )
            return table[key]

    else:
        raise ConfigError("provide --function or --in")
    if p.N == 1 and args.points:
        points = [np.array([z]) for z in _parse_range(args.points)]
    elif args.points_csv:
        pts, _ = _read_points_csv(args.points_csv, p.N)
        points = list(pts)
    else:
        raise ConfigError("provide --points (N=1 range) or --points-csv")

    def quad_transform(g, x):
        return kernels.fourier_quadrature(p, g, x, rule)

    def spectral_transform(x, applications):
        v = spectral.project_function(basis, f, rule)
        w = spectral.SpectralVector(
            p, {i: c * fourier_factor(i.ell, i.m) ** applications for i, c in v.coeffs.items()}
        )
        return spectral.evaluate(basis, w, x)

    rows = []
    discrepancy = 0.0
    for x in points:
        out = [*x]
        if args.method in ("quadrature", "both"):
            vq = quad_transform(f, x)
            if args.applications == 2:
                vq = kernels.fourier_quadrature(p, lambda y: quad_transform(f, y), x, rule)
        if args.method in ("spectral", "both"):
            vs = spectral_transform(x, args.applications)
        if args.method == "quadrature":
            out += [vq.real, vq.imag]
        elif args.method == "spectral":
            out += [vs.real, vs.imag]
        else:
            out += [vs.real, vs.imag, vq.real, vq.imag]
            discrepancy = max(discrepancy, abs(vs - vq))
        rows.append(out)
    header = [f"x{i + 1}" for i in range(p.N)]
    if args.method == "both":
        header += ["re_spectral", "im_spectral", "re_quadrature", "im_quadrature"]
    else:
        header += ["re", "im"]
    with _open_out(args) as fh:
        _write_rows(fh, header, rows)
    if args.method == "both":
        print(f"max discrepancy: {discrepancy:.6e}", file=sys.stderr)
        if cfg["tol"] is not None and discrepancy > cfg["tol"]:
            return 1
    return 0


def _builtin_initial(name):
    if name.startswith("bump:"):
        lo, hi = (float(v) for v in name.split(":")[1:])

        def u0(x):
            inside = (np.abs(x) > lo) & (np.abs(x) < hi)
            return np.where(inside, np.sin(np.pi * (np.abs(x) - lo) / (hi - lo)) ** 4, 0.0)

        return u0
    if name.startswith("gaussian:"):
        center, sigma = (float(v) for v in name.split(":")[1:])
        return lambda x: np.exp(-((np.abs(x) - center) ** 2) / (2 * sigma**2))
    raise ConfigError(f"unknown initial datum {name!r}")


def cmd_evolve(args):
    cfg = build_config(args)
    if args.kind == "wave1d":
        u0 = _builtin_initial(args.u0)
        annulus = None
        if args.annulus:
            lo, hi = (float(v) for v in args.annulus.split(","))
            annulus = (lo, hi)
        try:
            res = pointwise.wave_evolve_1d(
                cfg["b"],
                u0,
                lambda x: np.zeros_like(x),
                X=args.X,
                dx=args.dx,
                dt=args.dt,
                T=args.T,
                annulus=annulus,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        with _open_out(args) as fh:
            _write_rows(
                fh,
                ["t", "x", "u"],
                [
                    [t, x, u]
                    for t, frame in zip(res["times"], res["frames"])
                    for x, u in zip(res["xs"], frame)
                ],
            )
        if args.energy_out and annulus is not None:
            with open(args.energy_out, "w", newline="") as fh:
                _write_rows(
                    fh,
                    ["t", "annulus_lo", "annulus_hi", "E"],
                    [
                        [t, annulus[0] + t, annulus[1] - t, e]
                        for t, e in zip(res["energy_times"], res["energies"])
                    ],
                )
        return 0
    p = DeformationParams(cfg["b"], cfg["N"])
    basis = SpectralBasis(p, L=cfg["L"], M=cfg["M"] if p.N > 1 else 1)
    f, _ = _builtin_function(args.function, p, basis)
    rule = kernels.default_transform_rule(p)
    if p.N == 1 and args.points:
        points = [np.array([z]) for z in _parse_range(args.points)]
    elif args.points_csv:
        pts, _ = _read_points_csv(args.points_csv, p.N)
        points = list(pts)
    else:
        raise ConfigError("provide --points (N=1 range) or --points-csv")
    rows = []
    if args.kind == "heat":
        if args.t is None or complex(args.t).real <= 0:
            raise ConfigError("heat evolution needs --t with Re t > 0")
        for x in points:
            v = kernels.heat_apply(p, f, x, args.t, rule)
            rows.append([*x, v.real, v.imag])
    elif args.kind == "hermite":
        # F_b f = i^{b+N/2} e^{(pi i/4)(H - |x|^2)} f, realized through the
        # Mehler-type kernel at t = pi i/2
        t = 0.5j * math.pi
        phase = cmath.exp(0.5j * math.pi * (p.b + p.N / 2))
        for x in points:
            vals = np.asarray([f(y) for y in rule.nodes], dtype=complex)
            kern = np.asarray([kernels.lambda_kernel(p, x, y, t) for y in rule.nodes])
            v = phase * p.c_bN * complex(np.sum(rule.weights * kern * vals))
            rows.append([*x, v.real, v.imag])
    else:
        raise ConfigError(f"unknown evolution kind {args.kind!r}")
    header = [f"x{i + 1}" for i in range(p.N)] + ["re", "im"]
    with _open_out(args) as fh:
        _write_rows(fh, header, rows)
    return 0


# ---------------------------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--config", help="key=value config file; flags override it")
    sub.add_argument("--b", type=float)
    sub.add_argument("--N", type=int)
    sub.add_argument("--L", type=int)
    sub.add_argument("--M", type=int)
    sub.add_argument("--tol", type=float)
    sub.add_argument("--route", choices=["series", "beta_integral", "continuation"])
    sub.add_argument("--seed", type=int)
    sub.add_argument("--out", help="output path (default stdout)")


def make_parser():
    parser = argparse.ArgumentParser(prog="bfourier", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    v = subs.add_parser("verify", help="run verification suites")
    _add_common(v)
    v.add_argument("--suites", nargs="*", help="suite names (default: all)")
    v.set_defaults(func=cmd_verify)

    k = subs.add_parser("kernel", help="tabulate a kernel on a grid")
    _add_common(k)
    k.add_argument("--which", choices=["B", "Lambda", "heat"], required=True)
    k.add_argument("--t", type=float, help="time parameter for Lambda/heat")
    k.add_argument("--x", default="-2:2:9", help="N=1 x range min:max:count")
    k.add_argument("--y", default="-2:2:9", help="N=1 y range min:max:count")
    k.add_argument("--pairs", help="CSV of x1..xN,y1..yN pairs for N > 1")
    k.set_defaults(func=cmd_kernel)

    t = subs.add_parser("transform", help="apply the deformed Fourier transform")
    _add_common(t)
    t.add_argument("--function", help="builtin: gaussian | phi:ell:m:j")
    t.add_argument("--in", dest="in_path", help="CSV samples on the rule nodes")
    t.add_argument("--method", choices=["spectral", "quadrature", "both"], default="both")
    t.add_argument("--points", help="N=1 evaluation range min:max:count")
    t.add_argument("--points-csv", help="CSV of evaluation points")
    t.add_argument("--applications", type=int, choices=[1, 2], default=1)
    t.add_argument("--emit-nodes", action="store_true", help="emit the rule nodes and exit")
    t.set_defaults(func=cmd_transform)

    e = subs.add_parser("evolve", help="run an evolution equation")
    _add_common(e)
    e.add_argument("--kind", choices=["wave1d", "heat", "hermite"], required=True)
    e.add_argument("--function", help="builtin initial datum for heat/hermite")
    e.add_argument("--u0", help="wave1d initial datum: bump:lo:hi | gaussian:center:sigma")
    e.add_argument("--X", type=float, default=8.0)
    e.add_argument("--dx", type=float, default=0.005)
    e.add_argument("--dt", type=float, default=0.0045)
    e.add_argument("--T", type=float, default=0.4)
    e.add_argument("--t", type=float, help="time for the heat kind")
    e.add_argument("--annulus", help="lo,hi radii for the energy log")
    e.add_argument("--energy-out", help="CSV path for the energy log")
    e.add_argument("--points", help="N=1 evaluation range min:max:count")
    e.add_argument("--points-csv", help="CSV of evaluation points")
    e.set_defaults(func=cmd_evolve)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
