"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.  The env var
PQL_CACHE supplies a default supremum-cache path; an optional key=value
config file provides flag defaults and is overridden by explicit flags.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__, atlas, coeffs, domains, radial
from .cache import ENV_VAR, SupCache


def _parse_range(text: str):
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/2, got {text!r}") from None


def _load_config(path: str) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config(parser: argparse.ArgumentParser, config: dict):
    for action in parser._actions:
        if action.dest in config:
            raw = config[action.dest]
            if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                action.default = raw.lower() in ("1", "true", "yes", "on")
            elif action.type is not None:
                action.default = action.type(raw)
            else:
                action.default = raw
            action.required = False


def build_parser() -> tuple:
    parser = argparse.ArgumentParser(
        prog="pqatlas",
        description="Exact algebra checks, region atlas and radial shooting "
        "for positive solutions of du + |grad u|^q u^p = 0.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="key=value file with flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    sp = sub.add_parser("classify", help="classify a single (n,p,q) point")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--bounded", action="store_true")
    subparsers["classify"] = sp

    sp = sub.add_parser("curves", help="CSV of the separating curves over a q-grid")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q-min", type=float, required=True)
    sp.add_argument("--q-max", type=float, required=True)
    sp.add_argument("--step", type=float, required=True)
    sp.add_argument("--out", required=True)
    subparsers["curves"] = sp

    sp = sub.add_parser("domain-sup", help="supremum over a feasibility set")
    sp.add_argument("--set", choices=("L", "H"), required=True, dest="which")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--tol", type=float, required=True)
    subparsers["domain-sup"] = sp

    sp = sub.add_parser("atlas", help="scan a (p,q) window and emit CSV/SVG/PNG")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p-range", type=_parse_range, required=True)
    sp.add_argument("--q-range", type=_parse_range, required=True)
    sp.add_argument("--res", type=int, required=True)
    sp.add_argument("--bounded", action="store_true")
    sp.add_argument("--csv", required=True)
    sp.add_argument("--svg")
    sp.add_argument("--png")
    sp.add_argument("--cache")
    subparsers["atlas"] = sp

    sp = sub.add_parser("verify-algebra", help="exact verification of the coefficient systems")
    sp.add_argument(
        "--lemma",
        choices=("cl", "a3", "a4", "opt", "s3quad", "all"),
        default="all",
    )
    sp.add_argument("--json", action="store_true", help="emit machine-readable reports")
    subparsers["verify-algebra"] = sp

    sp = sub.add_parser("verify-identity", help="residual checks of the H-Laplacian identity")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=_parse_rational, required=True)
    sp.add_argument("--beta", type=_parse_rational)
    sp.add_argument("--sigma", type=_parse_rational)
    sp.add_argument("--samples", type=int, default=20)
    subparsers["verify-identity"] = sp

    sp = sub.add_parser("shoot", help="integrate one radial profile")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--u0", type=float, required=True)
    sp.add_argument("--rmax", type=float, required=True)
    sp.add_argument("--tol", type=float, required=True)
    subparsers["shoot"] = sp

    sp = sub.add_parser("threshold", help="bisect the radial existence threshold in p")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--p-lo", type=float, required=True)
    sp.add_argument("--p-hi", type=float, required=True)
    sp.add_argument("--ptol", type=float, required=True)
    subparsers["threshold"] = sp

    return parser, subparsers


def _cache_from(args) -> SupCache | None:
    path = getattr(args, "cache", None) or os.environ.get(ENV_VAR)
    return SupCache(path) if path else None


def _cmd_classify(args) -> int:
    v = domains.classify(
        domains.ParamPoint(args.n, args.p, args.q), bounded=args.bounded, cache=None
    )
    fired = ";".join(v.criteria_fired) or "-"
    print(f"status={v.status} criterion={v.criterion or '-'} fired={fired}")
    return 0


def _cmd_curves(args) -> int:
    if args.step <= 0 or args.q_max < args.q_min:
        print("invalid q grid", file=sys.stderr)
        return 2
    lines = ["q,l_V,g_root_lo,g_root_hi,h_root_lo,h_root_hi"]
    k = 0
    while True:
        q = args.q_min + k * args.step
        if q > args.q_max + 1e-12:
            break
        lv = f"{domains.curve_V(args.n, q):.9f}" if 0 <= q < 1 else ""
        gr = domains.G_roots(args.n, q)
        hr = domains.H_roots(args.n, q)
        gcells = (f"{gr[0]:.9f}", f"{gr[1]:.9f}") if gr else ("", "")
        hcells = (f"{hr[0]:.9f}", f"{hr[1]:.9f}") if hr else ("", "")
        lines.append(f"{q:.9f},{lv},{gcells[0]},{gcells[1]},{hcells[0]},{hcells[1]}")
        k += 1
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines) - 1} rows to {args.out}")
    return 0


def _cmd_domain_sup(args) -> int:
    set_name = {"L": "D", "H": "E"}[args.which]
    res = domains.sup_phi(set_name, args.n, args.q, args.tol, cache=_cache_from(args))
    print(
        f"set={args.which} n={args.n} q={args.q} sup={res.value!r} "
        f"argmax_y={res.argmax_y!r} attained={res.attained} "
        f"feasible_cells={res.grid_cells_feasible}"
    )
    return 0


def _cmd_atlas(args) -> int:
    scan = atlas.scan_grid(
        args.n, args.p_range, args.q_range, args.res, args.bounded, cache=_cache_from(args)
    )
    atlas.emit_csv(scan, args.csv)
    print(f"wrote {args.csv}")
    if args.svg:
        atlas.emit_svg(scan, args.svg)
        print(f"wrote {args.svg}")
    if args.png:
        atlas.render_png(scan, args.png)
        print(f"wrote {args.png}")
    return 0


def _cmd_verify_algebra(args) -> int:
    reports = []
    if args.lemma in ("cl", "all"):
        reports.append(coeffs.crosscheck_transcriptions())
        reports.append(coeffs.verify_S_reduction())
    if args.lemma in ("a3", "all"):
        reports.append(coeffs.verify_I_asymptotics("rho"))
    if args.lemma in ("a4", "all"):
        reports.append(coeffs.verify_I_asymptotics("eps"))
    if args.lemma in ("opt", "all"):
        rep = coeffs.VerificationReport("critical-curve vanishing of all six coefficients")
        for n in range(3, 13):
            for tenth in range(1, 10):
                q = Fraction(tenth, 10)
                if n - (n - 1) * q <= 0:
                    continue
                ok = coeffs.critical_vanishing(n, q)
                rep.add(f"n={n}, q={q}", ok)
        reports.append(rep)
    if args.lemma in ("s3quad", "all"):
        reports.append(coeffs.s3_quadratic_check())
    for rep in reports:
        print(rep.to_json() if args.json else rep.to_text())
    return 0 if all(r.ok for r in reports) else 1


def _cmd_verify_identity(args) -> int:
    n = args.n
    q = float(args.q)
    radii = np.logspace(-1, 1, 16)
    failures = 0

    def check_pair(beta, sigma):
        nonlocal failures
        worst = 0.0
        for r in radii:
            lhs, rhs = radial.deltaH_sides(n, q, beta, sigma, float(r))
            rel = abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1.0)
            worst = max(worst, rel)
        ok = worst <= 1e-8
        if not ok:
            failures += 1
        print(f"  beta={beta:+.6f} sigma={sigma:+.6f} worst rel residual {worst:.3e} "
              f"{'pass' if ok else 'FAIL'}")

    print(f"H-Laplacian identity on the ground state, n={n}, q={q}")
    if args.beta is not None or args.sigma is not None:
        if args.beta is None or args.sigma is None:
            print("--beta and --sigma must be given together", file=sys.stderr)
            return 2
        check_pair(float(args.beta), float(args.sigma))
    else:
        rng = np.random.default_rng(0)
        for _ in range(args.samples):
            beta, sigma = rng.uniform(-3.0, 3.0, size=2)
            check_pair(float(beta), float(sigma))

    beta_opt, sigma_opt = radial.optimal_pair(n, q)
    dev = max(radial.tensor_deviation(n, q, beta_opt, sigma_opt, float(r)) for r in radii)
    print(f"  traceless tensor norm at optimal pair: max {dev:.3e} "
          f"{'pass' if dev <= 1e-10 else 'FAIL'}")
    if dev > 1e-10:
        failures += 1
    prof = radial.aux_F_profile(n, q, radii)
    spread = (max(prof) - min(prof)) / (sum(prof) / len(prof))
    print(f"  auxiliary-function relative spread: {spread:.3e} "
          f"{'pass' if spread <= 1e-10 else 'FAIL'}")
    if spread > 1e-10:
        failures += 1
    return 1 if failures else 0


def _cmd_shoot(args) -> int:
    out = radial.shoot(args.n, args.p, args.q, args.u0, args.rmax, args.tol)
    radius = "" if out.radius is None else f" radius={out.radius:.9g}"
    reason = f" reason={out.reason!r}" if out.reason else ""
    print(f"status={out.status}{radius} steps={out.steps} final_r={out.final_r:.9g}{reason}")
    return 0


def _cmd_threshold(args) -> int:
    p_star = radial.existence_threshold(args.n, args.q, args.p_lo, args.p_hi, args.ptol)
    predicted = None
    if 0 <= args.q < 1 and args.n >= 3:
        predicted = domains.curve_V(args.n, args.q) + 1.0 - args.q
    extra = f" predicted={predicted:.9g}" if predicted is not None else ""
    print(f"p_star={p_star:.9g}{extra}")
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "curves": _cmd_curves,
    "domain-sup": _cmd_domain_sup,
    "atlas": _cmd_atlas,
    "verify-algebra": _cmd_verify_algebra,
    "verify-identity": _cmd_verify_identity,
    "shoot": _cmd_shoot,
    "threshold": _cmd_threshold,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            config = _load_config(argv[idx + 1])
        except (OSError, ValueError, IndexError) as exc:
            print(f"bad config: {exc}", file=sys.stderr)
            return 2
        for sp in subparsers.values():
            _apply_config(sp, config)
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, RuntimeError, domains.RegionConflictError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
