#!/usr/bin/env python3
"""Census of small invertible codes and their induced periodic actions.

Enumerates every invertible sliding block code of a given shape, prints
the group each census generates under composition with the shift, and
the induced permutations on short periodic orbits.
"""

import argparse
import itertools

from stabaut.codes import apply_to_periodic, enumerate_automorphisms
from stabaut.shifts import PeriodicPoint


def describe(aut, n, period):
    pts = [PeriodicPoint(b) for b in itertools.product(range(n), repeat=period)]
    index = {pt: i for i, pt in enumerate(pts)}
    images = [index[apply_to_periodic(aut.forward, x)] for x in pts]
    return images


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--radius", type=int, default=1)
    parser.add_argument("--period", type=int, default=1)
    parser.add_argument("--orbit-period", type=int, default=3)
    args = parser.parse_args()

    auts = enumerate_automorphisms(args.n, args.radius, args.period)
    print(f"n={args.n} radius={args.radius} period={args.period}: {len(auts)} automorphisms")
    for i, aut in enumerate(auts):
        action = describe(aut, args.n, args.orbit_period)
        tables = [list(map(int, t)) for t in aut.forward.tables]
        print(f"  #{i}: tables={tables} inverse_radius={aut.inverse.radius} "
              f"P{args.orbit_period}-action={action}")


if __name__ == "__main__":
    main()
