"""Degree-one resonance varieties from cup-product data, and the Torelli
resonance verdict.

An algebra is given by ``GroupAlgebraData``: b_1 = n, dim H_2 = m and the
comultiplication ``del: H_2 -> wedge^2 H_1`` as a C(n,2) x m matrix in the
lexicographic pair basis.  Its dual is the cup product on H^1, so
``ker(cup) = annihilator(im del)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import comb, lcm
from typing import Sequence

from .exact_linalg import (
    ExactMatrix,
    Multivector,
    Subspace,
    annihilator,
    as_rational,
    exterior_basis,
    rank,
    rank_kernel,
)
from .symplectic_rep import Weight, sp_generators, weight_of
from .torelli_module import TorelliRep, build_rep, maximal_vectors

FULL = "FULL"
TRIVIAL = "TRIVIAL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class GroupAlgebraData:
    n: int
    m: int
    delta: ExactMatrix
    label: str = ""

    def __post_init__(self):
        if self.delta.rows != comb(self.n, 2):
            raise ValueError(f"del must have C({self.n},2) = {comb(self.n, 2)} rows, got {self.delta.rows}")
        if self.delta.cols != self.m:
            raise ValueError(f"del must have {self.m} columns, got {self.delta.cols}")

    @classmethod
    def from_columns(cls, n: int, columns: Sequence, label: str = "") -> "GroupAlgebraData":
        """Build from images of H_2 basis vectors, each a vector in wedge^2 H_1.

        A column may be a dict on pair indices or a dict keyed by pairs (i, j).
        """
        idx = exterior_basis(n, 2).index
        cols = []
        for c in columns:
            v: dict = {}
            for k, x in dict(c).items():
                if isinstance(k, tuple):
                    i, j = k
                    s = 1 if i < j else -1
                    k = idx[(min(i, j), max(i, j))]
                    x = s * as_rational(x)
                v[k] = v.get(k, 0) + as_rational(x)
            cols.append(v)
        return cls(n, len(cols), ExactMatrix(comb(n, 2), len(cols), cols), label)

    @property
    def cup_kernel(self) -> Subspace:
        """ker(cup) inside wedge^2 H^1."""
        return annihilator(Subspace(comb(self.n, 2), self.delta.columns))


@dataclass
class Membership:
    member: bool
    h1_dim: int


def _mu_matrix(data: GroupAlgebraData, a: Sequence) -> ExactMatrix:
    """Rows indexed by H_2, columns by b in H^1: entry <a ^ b, del(xi)>."""
    pairs = exterior_basis(data.n, 2).tuples
    rows = []
    for col in data.delta.columns:
        r: dict = {}
        for k, c in col.items():
            i, j = pairs[k]
            # <a^b, e_i^e_j> = a_i b_j - a_j b_i
            if a[i]:
                r[j] = r.get(j, 0) + c * a[i]
            if a[j]:
                r[i] = r.get(i, 0) - c * a[j]
        rows.append({k: x for k, x in r.items() if x})
    return ExactMatrix.from_rows(data.m, data.n, rows)


def resonance_membership(data: GroupAlgebraData, a: Sequence, d: int) -> Membership:
    """Is ``a`` in R^1_d?  Also returns dim H^1(A, mu_a).

    ``a = 0`` gets ``h1_dim = n``.
    """
    a = [as_rational(x) for x in a]
    if len(a) != data.n:
        raise ValueError(f"point has {len(a)} coordinates, expected {data.n}")
    if d < 1:
        raise ValueError("depth must be >= 1")
    if not any(a):
        return Membership(data.n >= d, data.n)
    # membership is invariant under scaling, so work with an integral point
    den = reduce(lcm, (Fraction(x).denominator for x in a), 1)
    a = [as_rational(x * den) for x in a]
    # a itself lies in the kernel, so the rank is at most n - 1
    r = rank(_mu_matrix(data, a), upper_bound=data.n - 1)
    h1 = data.n - r - 1
    return Membership(h1 >= d, h1)


def random_point(rng: random.Random, n: int, bound: int = 10) -> list:
    """Nonzero point with small rational coordinates."""
    while True:
        p = [as_rational(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))) for _ in range(n)]
        if any(p):
            return p


# ---------------------------------------------------------------------------
# standard datasets


def free_group_data(n: int) -> GroupAlgebraData:
    return GroupAlgebraData(n, 0, ExactMatrix.zeros(comb(n, 2), 0), f"F{n}")


def surface_data(g: int) -> GroupAlgebraData:
    """Closed genus-g surface group: H_2 = Z, del = omega (basis a_1..a_g, b_1..b_g)."""
    n = 2 * g
    return GroupAlgebraData.from_columns(n, [{(i, g + i): 1 for i in range(g)}], f"surface{g}")


def heisenberg_data() -> GroupAlgebraData:
    """Integral Heisenberg group: b_1 = 2 and trivial comultiplication."""
    return GroupAlgebraData(2, 0, ExactMatrix.zeros(1, 0), "heisenberg")


def free_product_square_data() -> GroupAlgebraData:
    """F_2 x F_2 with basis x1, x2, y1, y2: im del spanned by x_i ^ y_j."""
    cols = [{(i, j): 1} for i in (0, 1) for j in (2, 3)]
    return GroupAlgebraData.from_columns(4, cols, "F2xF2")


def two_form_data() -> GroupAlgebraData:
    """n = 4 with ker(cup) spanned by e1*^e2* + e3*^e4* (a rank-4 two-form)."""
    K = Subspace(6, [{0: 1, 5: 1}])
    ann = annihilator(K)
    return GroupAlgebraData(4, ann.dim, ExactMatrix(6, ann.dim, ann.basis), "two-form4")


def random_algebra_data(rng: random.Random, nmax: int = 5, mmax: int = 6, bound: int = 3) -> GroupAlgebraData:
    n = rng.randint(2, nmax)
    m = rng.randint(0, mmax)
    N = comb(n, 2)
    cols = []
    for _ in range(m):
        density = rng.random()
        cols.append({k: rng.randint(-bound, bound) for k in range(N) if rng.random() < density})
    return GroupAlgebraData(n, m, ExactMatrix(N, m, cols), f"random(n={n},m={m})")


# ---------------------------------------------------------------------------
# Torelli


def torelli_data(g: int) -> GroupAlgebraData:
    """H^1 = V and ker(cup) = W, so im del = annihilator of W."""
    if g < 3:
        raise ValueError("Torelli data needs g >= 3")
    rep = build_rep(g)
    ann = annihilator(rep.W)
    return GroupAlgebraData(rep.dim, ann.dim, ExactMatrix(len(rep.pair), ann.dim, ann.basis), f"Torelli g={g}")


def mu_v0_kernel(rep: TorelliRep) -> Subspace:
    """{v in V : v0 ^ v in W}, i.e. the kernel of (wedge^2 V -> wedge^2 V / W) o mu_{v0}."""
    W = rep.W
    images = []
    for j in range(rep.dim):
        images.append(W.reduce(rep.wedge_vectors(rep.v0, {j: 1})))
    M = ExactMatrix(len(rep.pair), rep.dim, images)
    _, ker = rank_kernel(M)
    return ker


@dataclass
class TorelliReport:
    g: int
    verdict: str
    seed: int
    evidence: dict = field(default_factory=dict)


def verify_torelli_resonance(g: int, seed: int = 0, samples: int = 50) -> TorelliReport:
    """Decide whether R(T_g) is all of H^1 or trivial, with the evidence."""
    if g < 3:
        raise ValueError("need g >= 3")
    rep = build_rep(g)
    W = rep.W
    wedge2 = len(rep.pair)
    data = torelli_data(g)

    maxvec = maximal_vectors(rep.generators, Subspace.full(rep.dim))
    maxvec_is_v0 = maxvec == Subspace(rep.dim, [rep.v0])

    ker = mu_v0_kernel(rep)
    v0_point = [rep.v0.get(i, 0) for i in range(rep.dim)]
    v0_member = resonance_membership(data, v0_point, 1)

    rng = random.Random(seed)
    points = [random_point(rng, rep.dim) for _ in range(samples)]
    results = [resonance_membership(data, p, 1) for p in points]
    n_members = sum(r.member for r in results)
    zero = resonance_membership(data, [0] * rep.dim, 1)

    full_space = W.dim == wedge2
    if full_space and v0_member.member and n_members == samples:
        verdict = FULL
    elif not v0_member.member and maxvec_is_v0 and n_members == 0:
        verdict = TRIVIAL
    else:
        verdict = INCONCLUSIVE

    evidence = {
        "dim_V": rep.dim,
        "dim_wedge2_V": wedge2,
        "dim_W": W.dim,
        "dim_V_2lambda2": rep.highest.dim,
        "rank_del": data.m,
        "maximal_vector_space_dim": maxvec.dim,
        "maximal_vector_is_v0": maxvec_is_v0,
        "maximal_vector_weight": str(weight_of(maxvec.basis[0], rep.cartan)) if maxvec.dim else None,
        "weight_v0": str(weight_of(rep.v0, rep.cartan)),
        "weight_u0": str(weight_of(rep.u0, [h.lift(2) for h in rep.cartan])),
        "dim_ker_piW_mu_v0": ker.dim,
        "v0_member": v0_member.member,
        "v0_h1_dim": v0_member.h1_dim,
        "samples": samples,
        "sample_members": n_members,
        "sample_h1_dims": sorted({r.h1_dim for r in results}),
        "zero_member_depth1": zero.member,
        "zero_h1_dim": zero.h1_dim,
    }
    return TorelliReport(g, verdict, seed, evidence)


def lemma_non_checks(g: int) -> dict:
    """v0 ^ u0 in wedge^3 V, and the X[2t1] image of e = (a1^a2^a3)^(b1^b2^b3)."""
    rep = build_rep(g)
    H = rep.H
    # v0 ^ u0
    u0 = Multivector.from_vector(rep.dim, 2, rep.u0)
    v0 = Multivector(rep.dim, 1, {(i,): c for i, c in rep.v0.items()})
    v0u0 = v0.wedge(u0)

    # T_1 . e computed inside wedge^2(wedge^3 H)
    T1 = next(op for op in sp_generators(g) if op.root == Weight([2] + [0] * (g - 1)))
    tri = rep.tri
    n3 = len(tri)
    e_lhs = tri.index[(H.a(1), H.a(2), H.a(3))]
    e_rhs = tri.index[(H.b(1), H.b(2), H.b(3))]
    e = Multivector.basis(n3, [e_lhs, e_rhs])
    T1e = T1.lift(3).act(e)
    expected = Multivector.basis(n3, [e_lhs, tri.index[(H.a(1), H.b(2), H.b(3))]])

    # the same element in wedge^2 V, and its position relative to V(0)
    e_V = rep.wedge_vectors(rep.v0, rep.vbar0)
    T1_V = next(op for op in rep.generators if op.root == T1.root).lift(2)
    V0 = Subspace(len(rep.pair), [rep.z0])
    killed_by_all = all(not op.apply(e_V) for op in rep.wedge2_generators)
    return {
        "g": g,
        "v0_wedge_u0_nonzero": bool(v0u0),
        "v0_wedge_u0_terms": len(v0u0),
        "T1_e": T1e,
        "T1_e_expected": expected,
        "T1_e_matches": T1e == expected,
        "T1_e_nonzero": bool(T1e),
        "T1_e_in_V_nonzero": bool(T1_V.apply(e_V)),
        "e_in_V0": e_V in V0,
        "e_killed_by_sp": killed_by_all,
    }
