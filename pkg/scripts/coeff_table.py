#!/usr/bin/env python3
"""Dump the coefficient polynomials of one family, factored when possible.

Handy for eyeballing how the t-roots march outward with the x-power:

    python3 scripts/coeff_table.py Phi0 --order 12
    python3 scripts/coeff_table.py AlphaT --order 10 --t 1/2
"""

import argparse
from fractions import Fraction

from fibinterp import Family, as_rational, def_series, poly_str


def factored(poly):
    """Render c * t^m * (t - r1)(t + r1)... when the roots are small ints."""
    coeffs = list(poly.coeffs)
    if not coeffs:
        return "0"
    # strip powers of t
    order_of_t = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        order_of_t += 1
    # try integer roots by brute force up to the degree
    roots = []
    rest = coeffs[:]
    for r in range(-12, 13):
        if r == 0:
            continue
        while len(rest) > 1:
            # synthetic division by (t - r)
            out = [rest[-1]]
            for c in reversed(rest[:-1]):
                out.append(c + out[-1] * r)
            if out[-1] != 0:
                break
            rest = list(reversed(out[:-1]))
            roots.append(r)
    if len(rest) != 1:
        return poly_str(poly, descending=True)  # didn't factor fully
    lead = rest[0]
    parts = []
    if lead != 1:
        parts.append(str(lead) if lead.denominator == 1 else f"({lead})")
    if order_of_t == 1:
        parts.append("t")
    elif order_of_t > 1:
        parts.append(f"t^{order_of_t}")
    for r in sorted(roots, key=abs):
        parts.append(f"(t + {-r})" if r < 0 else f"(t - {r})")
    return " ".join(parts) if parts else "1"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("family", choices=[f.value for f in Family])
    ap.add_argument("--order", type=int, default=12)
    ap.add_argument("--t", default=None,
                    help="pin the parameter to a rational, e.g. 1/2")
    args = ap.parse_args()

    s = def_series(args.family, order=args.order)
    if args.t is not None:
        s = s.eval_t(as_rational(args.t))
        print(f"{args.family} at t = {args.t}, order {args.order}:")
        for k, c in enumerate(s.coeffs):
            if c != 0:
                print(f"  x^{k:<3d} {c}")
        return

    print(f"{args.family}, order {args.order}:")
    print(f"  {'power':<6s} {'factored':<40s} expanded")
    for k, c in enumerate(s.coeffs):
        if c.is_zero:
            continue
        print(f"  x^{k:<4d} {factored(c):<40s} {poly_str(c, descending=True)}")


if __name__ == "__main__":
    main()
