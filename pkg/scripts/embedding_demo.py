#!/usr/bin/env python3
"""Walk through the marker embedding on a periodic configuration.

Builds the canonical scheme into the 5-letter shift, embeds a few
2-shift automorphisms, and shows how a stretch-carrying periodic point
transforms, alongside the decoded row pair before and after.
"""

import argparse

from stabaut.codes import apply_to_periodic
from stabaut.generators import flip, flip_on_even, shift_power
from stabaut.krembed import coded_stretches, embed_automorphism, find_marker_scheme, read_at
from stabaut.shifts import PeriodicPoint


def show(scheme, name, aut, point):
    emb = embed_automorphism(aut, scheme)
    image = apply_to_periodic(emb.forward, point)
    print(f"{name}: period {emb.forward.period}, radius {emb.forward.radius}")
    print(f"  point  {point.block}")
    print(f"  image  {image.block}")
    for pt, label in ((point, "before"), (image, "after ")):
        stretch_positions = [
            z for z in range(pt.period) if scheme.is_data(pt.letter(z))
        ]
        if stretch_positions:
            z = stretch_positions[0]
            u, l = read_at(pt, z, scheme, span=2)
            print(f"  rows {label} at {z}: upper={u} lower={l}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--target", type=int, default=5)
    parser.add_argument("--gap", type=int, default=2)
    args = parser.parse_args()

    scheme = find_marker_scheme(args.target, 2, args.gap)
    print(f"scheme: target q={scheme.q}, data letters {scheme.data_letters}, gap {scheme.gap}")

    point = PeriodicPoint((1, 4, 2, 4, 4, 4))
    view = coded_stretches(point.block, 0, scheme)
    print(f"stretches in one period of {point.block}: {view.stretches}")
    print()
    for name, aut in (
        ("flip", flip(2)),
        ("shift", shift_power(2, 1)),
        ("flip-on-even", flip_on_even(2)),
    ):
        show(scheme, name, aut, point)
        print()


if __name__ == "__main__":
    main()
