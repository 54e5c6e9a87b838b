"""List balanced two-term polynomial profiles with small exponents.

Usage: python3 scripts/enumerate_balanced.py [--bound N] [--limit K] [--allow-sign-change]
"""
import argparse

from torricelli.clepsydra import enumerate_balanced


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=6, help="largest exponent m or n")
    ap.add_argument("--limit", type=int, default=20)
    ap.add_argument("--allow-sign-change", action="store_true", help="keep profiles not positive on (0, 1)")
    args = ap.parse_args()
    found = enumerate_balanced(args.bound, positive_only=not args.allow_sign_change)
    print(f"{len(found)} balanced profiles with exponents <= {args.bound}")
    for bp in found[: args.limit]:
        c = bp.certificate
        shape = "smooth" if c.smooth_of_revolution else "pointed"
        print(f"  {str(bp.profile):<40} {shape:<8} concave={c.concave}  g'(0)={c.slope_0}  g'(1)={c.slope_1}")


if __name__ == "__main__":
    main()
