"""Infinitesimal Alexander invariant b(G) presented over P = Sym(H_1).

b(G) is the cokernel of ``nabla = delta_3 + id (x) del`` from
``P (x) (wedge^3 H_1 + H_2)`` to ``P (x) wedge^2 H_1`` with
``delta_3(a^b^c) = a (x) b^c + b (x) c^a + c (x) a^b``.
Generators sit in degree 0; the degree-q piece b_q corresponds to
(H'/H'')_{q+2} of the holonomy Lie algebra.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .exact_linalg import (
    ExactMatrix,
    _forward_rank,
    as_rational,
    bareiss_rank,
    exterior_basis,
    sort_sign,
)
from .resonance_engine import GroupAlgebraData, random_algebra_data, random_point, resonance_membership

DEFAULT_GUARD = 2_000_000
GUARD_ENV = "TORELLI_RES_GUARD"
GRADING = "b_q = (H'/H'')_{q+2}; cokernel generators in degree 0"


def resource_guard() -> int:
    value = os.environ.get(GUARD_ENV)
    return int(value) if value else DEFAULT_GUARD


@dataclass
class HilbertProfile:
    dims: list[tuple[int, int]] = field(default_factory=list)
    finite: bool = False
    truncated_at: int | None = None
    grading: str = GRADING

    @property
    def values(self) -> list[int]:
        return [d for _, d in self.dims]

    @property
    def vanishing_degree(self) -> int | None:
        return next((q for q, d in self.dims if d == 0), None)


class ResourceGuardExceeded(RuntimeError):
    pass


def _monomials(n: int, q: int) -> tuple[list, dict]:
    if q < 0:
        return [], {}
    mons = list(combinations_with_replacement(range(n), q))
    return mons, {m: i for i, m in enumerate(mons)}


def _mul(m: tuple, x: int) -> tuple:
    return tuple(sorted(m + (x,)))


def presentation_nnz(data: GroupAlgebraData, q: int) -> int:
    """Upper bound for the nonzero entries of the degree-q presentation block."""
    n = data.n
    nnz = comb(n + q - 1, q) * data.delta.nnz
    if q >= 1:
        nnz += 3 * comb(n + q - 2, q - 1) * comb(n, 3)
    return nnz


def degree_block(data: GroupAlgebraData, q: int) -> tuple[int, list[dict]]:
    """Row count and images (as sparse column vectors) spanning im(nabla) in degree q."""
    n = data.n
    pairs = exterior_basis(n, 2)
    P = len(pairs)
    mons_q, idx_q = _monomials(n, q)
    cols: list[dict] = []

    def put(vec, mono, i, j, c):
        s, t = sort_sign((i, j))
        key = idx_q[mono] * P + pairs.index[t]
        v = vec.get(key, 0) + s * c
        if v:
            vec[key] = v
        else:
            vec.pop(key, None)

    if q >= 1:
        mons_prev, _ = _monomials(n, q - 1)
        for m in mons_prev:
            for (a, b, c) in exterior_basis(n, 3).tuples:
                vec: dict = {}
                put(vec, _mul(m, a), b, c, 1)
                put(vec, _mul(m, b), c, a, 1)
                put(vec, _mul(m, c), a, b, 1)
                cols.append(vec)
    for m in mons_q:
        base = idx_q[m] * P
        for col in data.delta.columns:
            if col:
                cols.append({base + k: c for k, c in col.items()})
    return len(mons_q) * P, cols


def graded_dims(data: GroupAlgebraData, qmax: int, guard: int | None = None) -> HilbertProfile:
    """dim b_q for q = 0..qmax, stopping early at a resource guard."""
    if qmax < 0:
        raise ValueError("qmax must be >= 0")
    guard = resource_guard() if guard is None else guard
    prof = HilbertProfile()
    for q in range(qmax + 1):
        if prof.finite:
            # generated in degree 0 over a ring generated in degree 1
            prof.dims.append((q, 0))
            continue
        if presentation_nnz(data, q) > guard:
            prof.truncated_at = q
            break
        nrows, cols = degree_block(data, q)
        d = nrows - _forward_rank(cols)
        prof.dims.append((q, d))
        if d == 0:
            prof.finite = True
    return prof


def nabla_at(data: GroupAlgebraData, z: Sequence) -> ExactMatrix:
    """nabla evaluated at z in H^1: a C(n,2) x (C(n,3) + m) matrix."""
    n = data.n
    pairs = exterior_basis(n, 2)
    cols = []
    for (a, b, c) in exterior_basis(n, 3).tuples:
        vec: dict = {}
        for x, (i, j) in ((a, (b, c)), (b, (c, a)), (c, (a, b))):
            if z[x]:
                s, t = sort_sign((i, j))
                k = pairs.index[t]
                vec[k] = vec.get(k, 0) + s * z[x]
        cols.append({k: v for k, v in vec.items() if v})
    cols.extend(data.delta.columns)
    return ExactMatrix(len(pairs), len(cols), cols)


def coker_dim_at(data: GroupAlgebraData, z: Sequence) -> int:
    z = [as_rational(x) for x in z]
    if len(z) != data.n:
        raise ValueError(f"point has {len(z)} coordinates, expected {data.n}")
    M = nabla_at(data, z)
    return M.rows - bareiss_rank(M)


def wk_membership(data: GroupAlgebraData, z: Sequence, k: int) -> bool:
    """Is z in W_k, the zero locus of the (k-1)-st elementary ideal of b(G)?"""
    return coker_dim_at(data, z) >= k


def infares_crosscheck(data: GroupAlgebraData, samples: Sequence[Sequence], kmax: int) -> dict:
    """Compare W_k and R_k membership at nonzero points for k = 1..kmax."""
    cases = 0
    discrepancies = []
    for z in samples:
        z = [as_rational(x) for x in z]
        if not any(z):
            raise ValueError("cross-check points must be nonzero")
        coker = coker_dim_at(data, z)
        for k in range(1, kmax + 1):
            w = coker >= k
            r = resonance_membership(data, z, k).member
            cases += 1
            if w != r:
                discrepancies.append({"point": [str(x) for x in z], "k": k, "W": w, "R": r})
    return {"label": data.label, "cases": cases, "discrepancies": discrepancies}


def random_crosscheck(count: int, seed: int, points: int = 20, kmax: int = 3, nmax: int = 5) -> dict:
    """infares_crosscheck over ``count`` seeded random algebras with ``points`` points each."""
    rng = random.Random(seed)
    runs = []
    for _ in range(count):
        data = random_algebra_data(rng, nmax=nmax)
        samples = [random_point(rng, data.n) for _ in range(points)]
        runs.append(infares_crosscheck(data, samples, kmax))
    return {
        "datasets": [r["label"] for r in runs],
        "cases": sum(r["cases"] for r in runs),
        "discrepancies": [dict(d, label=r["label"]) for r in runs for d in r["discrepancies"]],
    }


def finiteness_detect(data: GroupAlgebraData, qbound: int, guard: int | None = None) -> dict:
    """``finite`` is True with the vanishing degree, or "unknown" (never False)."""
    if qbound < 1:
        raise ValueError("qbound must be >= 1")
    prof = graded_dims(data, qbound, guard)
    return {
        "finite": True if prof.finite else "unknown",
        "vanishing_degree": prof.vanishing_degree,
        "profile": prof,
    }


def chen_rank_free(n: int, k: int) -> int:
    """Chen ranks of the free group F_n: (k-1) C(n+k-2, k) for k >= 2."""
    return (k - 1) * comb(n + k - 2, k)
