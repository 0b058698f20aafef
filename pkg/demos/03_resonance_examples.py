"""Resonance membership for a few classical groups, then the Torelli verdict.

Membership is decided exactly from the cup-product map: a point a lies in the
depth-d resonance variety when dim H^1(A, a) >= d.
"""

from __future__ import annotations

import random

from torelli_resonance.resonance_engine import (
    free_group_data,
    free_product_square_data,
    heisenberg_data,
    random_point,
    resonance_membership,
    surface_data,
    verify_torelli_resonance,
)
from torelli_resonance.reports import rational_str


def main():
    rng = random.Random(0)
    for data in (free_group_data(3), surface_data(2), heisenberg_data()):
        a = random_point(rng, data.n)
        m = resonance_membership(data, a, 1)
        print(f"{data.label}: a={[rational_str(x) for x in a]} h1={m.h1_dim} member={m.member}")

    d = free_product_square_data()
    for name, a in (("x1", [1, 0, 0, 0]), ("x1+y1", [1, 0, 1, 0])):
        m = resonance_membership(d, a, 1)
        print(f"F2xF2 at {name}: h1={m.h1_dim}")

    for g in (3, 4):
        rep = verify_torelli_resonance(g, seed=0, samples=10)
        print(f"Torelli g={g}: {rep.verdict}  dim W={rep.evidence['dim_W']}"
              f"  rank del={rep.evidence['rank_del']}")


if __name__ == "__main__":
    main()
