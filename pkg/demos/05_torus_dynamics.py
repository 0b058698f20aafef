"""Action of the unipotent generators on the torus T(L) = L (x) R / L.

Shows the integral 14x14 matrices for genus 3, the orbit of a random
2-torsion point, full-torsion invariance and the irreducibility witness.
"""

from __future__ import annotations

import random

from torelli_resonance.torus_dynamics import (
    determinants,
    full_torsion_invariant,
    induced_action,
    invariant_set_check,
    irreducibility_witness,
    orbit,
    random_torsion_point,
)


def main():
    act = induced_action(3)
    print(f"rank {act.rank}, {len(act.matrices)} generators, determinants {sorted(set(determinants(act)))}")
    A = act.matrices[0]
    print(f"first generator: {A.shape}, {int((A != 0).sum())} nonzero entries, max |entry| {int(abs(A).max())}")

    t = random_torsion_point(random.Random(7), act.rank, 2)
    orb = orbit(act, t)
    print(f"orbit of a 2-torsion point: {len(orb)} points, closed={invariant_set_check(act, orb.points)}")
    print("full 2-torsion invariant:", full_torsion_invariant(act, 2))
    print("irreducibility:", irreducibility_witness(act, seed=0))


if __name__ == "__main__":
    main()
