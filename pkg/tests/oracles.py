"""Independent reference computations used to cross-check the library.

Nothing here imports the library's linear algebra: ranks come from sympy,
wedge signs from inversion counts, module dimensions from the Weyl formula.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, prod

import sympy


def inversion_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def wedge_dict(u: dict, v: dict) -> dict:
    """Wedge of {sorted tuple: coeff} dicts via inversion counting."""
    out: dict = {}
    for s, a in u.items():
        for t, b in v.items():
            sign = inversion_sign(s + t)
            if sign:
                key = tuple(sorted(s + t))
                out[key] = out.get(key, 0) + sign * a * b
    return {k: c for k, c in out.items() if c}


def sympy_rank(dense) -> int:
    if not dense or not dense[0]:
        return 0
    return sympy.Matrix(dense).rank()


def weyl_dim_sp(highest) -> int:
    """dim of the irreducible sp_2g module with highest weight sum c_i t_i."""
    g = len(highest)
    rho = [g - i for i in range(g)]
    lam = [c + r for c, r in zip(highest, rho)]
    num = Fraction(1)
    for i in range(g):
        for j in range(i + 1, g):
            num *= Fraction((lam[i] - lam[j]) * (lam[i] + lam[j]), (rho[i] - rho[j]) * (rho[i] + rho[j]))
        num *= Fraction(lam[i], rho[i])
    assert num.denominator == 1
    return int(num)


def chen_rank_free(n: int, k: int) -> int:
    """Chen ranks of F_n from the generating function: sum over binomials."""
    # theta_k = (k-1) C(n+k-2, k), rewritten through the dimension of
    # Sym^{k-2} (x) wedge^2 minus Sym^{k-3} (x) wedge^3 (Koszul exactness)
    q = k - 2
    sym = lambda d: comb(n + d - 1, d) if d >= 0 else 0
    total, sign = 0, 1
    for j in range(0, q + 1):
        total += sign * sym(q - j) * comb(n, 2 + j)
        sign = -sign
    return total


def cup_membership_h1(n: int, columns: list[dict], a) -> int:
    """h1 dim for resonance at a != 0: dense pairing matrix ranked by sympy.

    ``columns`` are del-images keyed by pairs (i, j) with i < j.
    """
    rows = []
    for col in columns:
        row = []
        for b in range(n):
            # <a ^ e_b, e_i ^ e_j> = a_i [b == j] - a_j [b == i]
            s = 0
            for (i, j), c in col.items():
                if b == j:
                    s += c * sympy.Rational(a[i])
                if b == i:
                    s -= c * sympy.Rational(a[j])
            row.append(s)
        rows.append(row)
    r = sympy_rank(rows) if rows else 0
    return n - r - 1


def alexander_dims(n: int, columns: list[dict], qmax: int) -> list[int]:
    """dim b_q from a polynomial presentation matrix expanded degree by degree.

    The presentation of b(G) has polynomial entries in x_1..x_n; its degree-q
    piece is obtained by multiplying each column by all monomials of the
    complementary degree and reading off coefficients.
    """
    xs = sympy.symbols(f"x0:{n}")
    pairs = list(combinations(range(n), 2))
    pidx = {p: i for i, p in enumerate(pairs)}

    def pair_entry(i, j):
        return (1, pidx[(i, j)]) if i < j else (-1, pidx[(j, i)])

    # columns: (polynomial vector over pairs, degree of its entries)
    gens = []
    for (a, b, c) in combinations(range(n), 3):
        vec = [0] * len(pairs)
        for x, (i, j) in ((a, (b, c)), (b, (c, a)), (c, (a, b))):
            s, k = pair_entry(i, j)
            vec[k] += s * xs[x]
        gens.append((vec, 1))
    for col in columns:
        vec = [0] * len(pairs)
        for (i, j), c in col.items():
            vec[pidx[(i, j)]] += sympy.Rational(c)
        gens.append((vec, 0))
    dims = []
    for q in range(qmax + 1):
        mons_q = list(combinations_with_replacement(range(n), q))
        target = {m: t for t, m in enumerate(mons_q)}
        rows = len(mons_q) * len(pairs)
        cols = []
        for vec, d in gens:
            if d > q:
                continue
            for m in combinations_with_replacement(range(n), q - d):
                mono = prod((xs[i] for i in m), start=sympy.Integer(1))
                dense = [0] * rows
                for k, entry in enumerate(vec):
                    if entry == 0:
                        continue
                    poly = sympy.Poly(sympy.expand(entry * mono), *xs)
                    for exps, c in poly.terms():
                        key = tuple(i for i, e in enumerate(exps) for _ in range(e))
                        dense[target[key] * len(pairs) + k] += c
                cols.append(dense)
        if cols:
            r = sympy.Matrix(cols).T.rank()
        else:
            r = 0
        dims.append(rows - r)
    return dims
