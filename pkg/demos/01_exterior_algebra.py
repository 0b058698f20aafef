"""Exact exterior algebra and linear algebra over Q.

Builds wedge products with signs, checks a rank three ways (incremental
echelon, Bareiss fraction-free elimination, reduction mod a large prime) and
computes an annihilator.
"""

from __future__ import annotations

from torelli_resonance.exact_linalg import (
    ExactMatrix,
    Multivector,
    Subspace,
    annihilator,
    bareiss_rank,
    rank,
    rank_mod_p,
    wedge,
)


def main():
    e = [Multivector(4, 1, {(i,): 1}) for i in range(4)]
    print("e1^e0 =", wedge(e[1], e[0]))
    print("(e0+e1)^(e0-e1) =", wedge(e[0] + e[1], e[0] - e[1]))

    M = ExactMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    print("rank over Q:", rank(M), " Bareiss:", bareiss_rank(M), " mod p:", rank_mod_p(M))

    S = Subspace(4, [{0: 1, 1: 1}, {2: 1}])
    ann = annihilator(S)
    print("annihilator of span(e0+e1, e2) has dim", ann.dim, "basis", ann.basis)


if __name__ == "__main__":
    main()
