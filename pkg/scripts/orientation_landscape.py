"""Drain time over the sphere of directions for one solid, as CSV.

Writes ``x,y,z,T`` for every lattice direction, then reports the search
extremes on stderr. Useful for plotting the orientation landscape.

Usage: python3 scripts/orientation_landscape.py cube [--grid N] [--out FILE]
"""
import argparse
import sys

from torricelli.geometry import PLATONIC, platonic
from torricelli.orientation import drain_time_along, fibonacci_lattice, torricelli_number


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("solid", choices=sorted(PLATONIC))
    ap.add_argument("--grid", type=int, default=2048)
    ap.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = ap.parse_args()
    poly = platonic(args.solid)
    args.out.write("x,y,z,T\n")
    for d in fibonacci_lattice(args.grid):
        args.out.write(f"{d[0]:.10g},{d[1]:.10g},{d[2]:.10g},{drain_time_along(poly, d):.17g}\n")
    rep = torricelli_number(poly, grid=args.grid)
    print(f"T_min={rep.T_min:.12g}  T_max={rep.T_max:.12g}  rho={rep.rho:.12g}", file=sys.stderr)


if __name__ == "__main__":
    main()
