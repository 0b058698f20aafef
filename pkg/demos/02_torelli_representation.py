"""The symplectic representation on V = ker(contraction) inside wedge^3 H.

For genus 3 and 4 this prints the dimension of V, its weight multiplicities,
the highest-weight vector v0 and the dimension of the subspace W of wedge^2 V
generated by v0 ^ u0 under sp_g.
"""

from __future__ import annotations

import sys
from collections import Counter

from torelli_resonance.exact_linalg import Multivector
from torelli_resonance.torelli_module import build_rep


def main(genera=(3, 4)):
    for g in genera:
        rep = build_rep(g)
        mult = Counter(rep.basis_weights)
        print(f"g={g}: dim V = {rep.dim}, dim wedge^2 V = {len(rep.pair)}")
        print("  distinct weights:", len(mult), " max multiplicity:", max(mult.values()))
        print("  v0 =", Multivector.from_vector(2 * g, 3, rep.embed(rep.v0)))
        print("  dim W =", rep.W.dim)


if __name__ == "__main__":
    main(tuple(int(a) for a in sys.argv[1:]) or (3, 4))
