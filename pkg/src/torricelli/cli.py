"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 usage error. Results go to
stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import clepsydra
from .drainage import drainage_time, drainage_time_surface, simulate, volume
from .errors import ProfileSyntaxError, TorricelliError
from .geometry import (
    ANALYTIC_PROFILES,
    PLATONIC,
    analytic_profile,
    area_profile,
    as_unit,
    circumradius,
    inradius,
    load_mesh,
    revolution_area_profile,
    solid,
)
from .orientation import torricelli_number, turn_up_number
from .verification import all_passed, format_table, verify_suite


def dumps(obj) -> str:
    """JSON with floats at 17 significant digits (round-trip exact)."""

    def enc(o):
        if isinstance(o, bool) or o is None:
            return json.dumps(o)
        if isinstance(o, (float, np.floating)):
            return f"{float(o):.17g}" if math.isfinite(o) else "null"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, dict):
            return "{" + ", ".join(f"{json.dumps(str(k))}: {enc(v)}" for k, v in o.items()) + "}"
        if isinstance(o, (list, tuple, np.ndarray)):
            return "[" + ", ".join(enc(v) for v in o) + "]"
        raise TypeError(f"cannot serialise {type(o).__name__}")

    return enc(obj)


def _g10(x: float) -> str:
    return f"{x:.10g}"


def _direction(text: str) -> np.ndarray:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dir expects x,y,z, got {text!r}") from None
    if len(parts) != 3 or not all(map(math.isfinite, parts)):
        raise argparse.ArgumentTypeError(f"--dir expects three finite numbers, got {text!r}")
    if math.hypot(*parts) == 0.0:
        raise argparse.ArgumentTypeError("--dir must be non-zero")
    return np.array(parts)


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _count(lo: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"expected an integer >= {lo}, got {v}")
        return v

    return parse


def _add_body(p: argparse.ArgumentParser, profile: bool = False) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--solid", help=f"catalog solid: {', '.join(PLATONIC)} or box:AxBxC")
    g.add_argument("--mesh", help="convex mesh file (.obj or .json)")
    if profile:
        g.add_argument("--profile", help="revolution profile, e.g. '29*y^2*(1-y)+33*y*(1-y)^4'")
        g.add_argument("--analytic", choices=ANALYTIC_PROFILES, help="closed-form area profile")
    p.add_argument("--edge", type=_positive, default=1.0, help="edge length of a catalog solid")


def _add_orientation(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dir", type=_direction, default=np.array([0.0, 0.0, 1.0]), help="up direction x,y,z")
    p.add_argument("--vertex-down", "--flip", dest="flip", action="store_true", help="turn the solid over (negate --dir)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torricelli", description="Torricelli drainage times of convex solids.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("solids", help="list catalog solids")
    p.add_argument("--edge", type=_positive, default=1.0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("time", help="drainage time in one orientation")
    _add_body(p, profile=True)
    _add_orientation(p)
    p.add_argument("--K", type=_positive, default=1.0)
    p.add_argument("--method", choices=("profile", "surface"), default="profile")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("torricelli", help="Torricelli number by orientation search")
    _add_body(p)
    p.add_argument("--grid", type=_count(64), default=4096)
    p.add_argument("--refine", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("turnup", help="turn-up number of a solid of revolution")
    p.add_argument("--profile", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("balance", help="balance two terms, check a profile, or enumerate balanced pairs")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--terms", help="two exponent pairs 'm,n;p,q'")
    g.add_argument("--profile", help="profile to check")
    g.add_argument("--enumerate", type=_count(1), metavar="BOUND")
    p.add_argument("--limit", type=_count(1), default=20)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("simulate", help="height trajectory h(t) as CSV")
    _add_body(p, profile=True)
    _add_orientation(p)
    p.add_argument("--K", type=_positive, default=1.0)
    p.add_argument("--samples", type=_count(2), default=101)
    p.add_argument("--cross-check", action="store_true", help="compare against an ODE integration")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("section", help="cross-section areas A(h) as CSV")
    _add_body(p, profile=True)
    _add_orientation(p)
    p.add_argument("--samples", type=_count(2), default=101)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="recompute every golden value")
    p.add_argument("--grid", type=_count(64), default=4096)
    p.add_argument("--search", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--json", action="store_true")
    return parser


def _body(args, parser):
    if getattr(args, "mesh", None):
        return load_mesh(args.mesh)
    if getattr(args, "solid", None):
        return solid(args.solid, args.edge)
    parser.error("one of --solid or --mesh is required")


def _profile(args, parser):
    """Area profile for the time/simulate/section commands."""
    if getattr(args, "profile", None):
        return revolution_area_profile(clepsydra.parse_profile(args.profile), flipped=args.flip), None, None
    if getattr(args, "analytic", None):
        prof = analytic_profile(args.analytic)
        return (prof.flipped() if args.flip else prof), None, None
    poly = _body(args, parser)
    d = as_unit(-args.dir if args.flip else args.dir)
    return area_profile(poly, d), poly, d


def _cmd_solids(args, parser, out):
    rows = []
    for name in PLATONIC:
        p = solid(name, args.edge)
        rows.append({"name": name, "edge": args.edge, "vertices": len(p.vertices), "faces": len(p.faces),
                     "volume": p.volume, "circumradius": circumradius(p), "inradius": inradius(p)})
    if args.json:
        print(dumps(rows), file=out)
    else:
        print(f"{'solid':<12} {'V':>14} {'R':>14} {'r':>14}", file=out)
        for r in rows:
            print(f"{r['name']:<12} {_g10(r['volume']):>14} {_g10(r['circumradius']):>14} {_g10(r['inradius']):>14}",
                  file=out)
    return 0


def _cmd_time(args, parser, out):
    prof, poly, d = _profile(args, parser)
    if args.method == "surface":
        if poly is None:
            parser.error("--method surface needs --solid or --mesh")
        rep = drainage_time_surface(poly, d, args.K)
    else:
        rep = drainage_time(prof, args.K)
    if args.json:
        print(dumps(rep.to_dict()), file=out)
    else:
        print(f"T = {_g10(rep.T)}  (H = {_g10(rep.H)}, K = {_g10(rep.K)}, err ~ {rep.quadrature_error_estimate:.2g})",
              file=out)
    return 0


def _cmd_torricelli(args, parser, out):
    rep = torricelli_number(_body(args, parser), grid=args.grid, refine=args.refine)
    if args.json:
        print(dumps(rep.to_dict()), file=out)
    else:
        fmt = lambda v: "(" + ", ".join(_g10(c) for c in v) + ")"
        print(f"T_min = {_g10(rep.T_min)} along {fmt(rep.dir_min)}", file=out)
        print(f"T_max = {_g10(rep.T_max)} along {fmt(rep.dir_max)}", file=out)
        print(f"rho   = {_g10(rep.rho)}  (grid {rep.grid_size}{', refined' if rep.refined else ''})", file=out)
    return 0


def _cmd_turnup(args, parser, out):
    g = clepsydra.parse_profile(args.profile)
    revolution_area_profile(g)  # rejects negative profiles
    rep = turn_up_number(g)
    if args.json:
        print(dumps(rep.to_dict()), file=out)
    else:
        print(f"T_up = {_g10(rep.T_up)}  T_down = {_g10(rep.T_down)}  rho_ell = {_g10(rep.rho_ell)}", file=out)
        if rep.exact_moments:
            up, down = rep.exact_moments
            print(f"moments: {up} upright, {down} flipped", file=out)
    return 0


def _parse_terms(text: str, parser):
    try:
        pairs = [tuple(int(v) for v in part.split(",")) for part in text.split(";")]
    except ValueError:
        pairs = []
    if len(pairs) != 2 or any(len(p) != 2 or min(p) < 0 for p in pairs):
        parser.error(f"--terms expects 'm,n;p,q' with non-negative integers, got {text!r}")
    return pairs


def _cmd_balance(args, parser, out):
    if args.terms:
        u1, u2 = _parse_terms(args.terms, parser)
        sol = clepsydra.solve_balanced(u1, u2)
        data = {"C": str(sol.C) if sol else None, "symmetric": bool(sol and sol.symmetric)}
        if sol and not sol.symmetric and sol.C > 0:
            bp = clepsydra.balanced_profile(u1, u2)
            data.update(bp.to_dict())
        if args.json:
            print(dumps(data), file=out)
        elif sol is None:
            print("no balancing constant exists", file=out)
        else:
            print(f"C = {sol.C}{' (both terms already balanced)' if sol.symmetric else ''}", file=out)
            if "profile" in data:
                print(f"g(y) = {data['profile']}", file=out)
        return 0
    if args.profile:
        g = clepsydra.parse_profile(args.profile)
        data = {
            "profile": str(g),
            "moment_up": str(clepsydra.moment(g)),
            "moment_down": str(clepsydra.moment(g, flipped=True)),
            "balanced": clepsydra.imbalance(g) == 0,
            "characterization_residual": clepsydra.characterization_residual(g),
            "certificate": clepsydra.convexity_certificate(g).to_dict(),
        }
        if args.json:
            print(dumps(data), file=out)
        else:
            for k, v in data.items():
                print(f"{k}: {v}", file=out)
        return 0
    found = clepsydra.enumerate_balanced(args.enumerate)[: args.limit]
    if args.json:
        print(dumps([bp.to_dict() for bp in found]), file=out)
    else:
        for bp in found:
            c = bp.certificate
            print(f"{bp.profile}  smooth={c.smooth_of_revolution}  concave={c.concave}", file=out)
    return 0


def _cmd_simulate(args, parser, out):
    prof, _, _ = _profile(args, parser)
    traj = simulate(prof, args.K, n_samples=args.samples, cross_check=args.cross_check)
    if args.json:
        data = {"T": traj.T, "H": traj.H, "t": traj.t, "h": traj.h}
        if traj.rk_discrepancy is not None:
            data["rk_discrepancy"] = traj.rk_discrepancy
        print(dumps(data), file=out)
    else:
        out.write(traj.to_csv())
        if traj.rk_discrepancy is not None:
            print(f"ODE cross-check discrepancy {traj.rk_discrepancy:.3g}", file=sys.stderr)
    return 0


def _cmd_section(args, parser, out):
    prof, _, _ = _profile(args, parser)
    h = np.linspace(0.0, prof.H, args.samples)
    a = np.asarray(prof(h), dtype=float)
    if args.json:
        print(dumps({"h": h, "A": a, "volume": volume(prof)}), file=out)
    else:
        print("h,A", file=out)
        for hv, av in zip(h, a):
            print(f"{hv:.17g},{av:.17g}", file=out)
    return 0


def _cmd_verify(args, parser, out):
    rows = verify_suite(grid=args.grid, search=args.search)
    if args.json:
        print(dumps({"passed": all_passed(rows), "rows": [r.to_dict() for r in rows]}), file=out)
    else:
        print(format_table(rows), file=out)
    return 0 if all_passed(rows) else 1


COMMANDS = {
    "solids": _cmd_solids,
    "time": _cmd_time,
    "torricelli": _cmd_torricelli,
    "turnup": _cmd_turnup,
    "balance": _cmd_balance,
    "simulate": _cmd_simulate,
    "section": _cmd_section,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, parser, out)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ProfileSyntaxError as exc:
        parser.print_usage(sys.stderr)
        print(f"torricelli: error: --profile: {exc}", file=sys.stderr)
        return 2
    except (TorricelliError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
