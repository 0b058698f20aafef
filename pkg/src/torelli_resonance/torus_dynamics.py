"""Arithmetic dynamics on the character torus of L = wedge^3 H / H.

The lattice L gets the Z-basis of trivectors left after discarding one
"pivot" trivector per generator x ^ omega of the sublattice H ^ omega.
Torsion characters are exponent vectors in (Q/Z)^r; a group element M acts
by ``t -> (M^-1)^T t``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Iterable, Sequence

import numpy as np
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .exact_linalg import ExactMatrix, Subspace, determinant, exterior_basis, spin
from .symplectic_rep import SymplecticSpace, unipotents
from .torelli_module import wedge_omega


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class TorsionPoint(tuple):
    """Torsion character of a lattice: exponents in [0, 1) as Fractions."""

    def __new__(cls, exponents: Iterable):
        vals = []
        for x in exponents:
            x = Fraction(x)
            vals.append(x - (x.numerator // x.denominator))
        return super().__new__(cls, vals)

    @classmethod
    def from_integers(cls, numerators: Sequence[int], m: int) -> "TorsionPoint":
        return cls(Fraction(int(v) % m, m) for v in numerators)

    @property
    def order(self) -> int:
        return reduce(_lcm, (x.denominator for x in self), 1)

    def numerators(self, m: int | None = None) -> tuple[int, ...]:
        m = self.order if m is None else m
        if m % self.order:
            raise ValueError(f"{m} is not a multiple of the order {self.order}")
        return tuple(int(x * m) for x in self)

    def __repr__(self):
        return "TorsionPoint(" + ", ".join(str(x) for x in self) + ")"


def quotient_basis(rows: Sequence[dict], ncols: int) -> tuple[list[int], list[dict]]:
    """Unit-pivot reduction of an integral sublattice given by generating rows.

    Returns the pivot columns and the reduced rows (each pivot column is +-1
    in its own row and 0 in the others).  Raises ``ValueError`` when no unit
    pivot is available, i.e. when this simple route cannot certify that the
    sublattice is saturated.
    """
    rows = [dict(r) for r in rows]
    pivots: list[int] = []
    for i, r in enumerate(rows):
        col = next((k for k in sorted(r) if abs(r[k]) == 1 and k not in pivots), None)
        if col is None:
            raise ValueError("no unit pivot: sublattice may not be saturated")
        s = r[col]
        for j, other in enumerate(rows):
            if j != i and col in other:
                f = other[col] * s
                for k, c in r.items():
                    v = other.get(k, 0) - f * c
                    if v:
                        other[k] = v
                    else:
                        other.pop(k, None)
        pivots.append(col)
    return pivots, rows


@dataclass
class LatticeAction:
    """Integral matrices (with inverses) acting on L = Z^rank."""

    rank: int
    matrices: list[np.ndarray]
    inverses: list[np.ndarray]
    labels: list[str] = field(default_factory=list)
    quotient: "callable | None" = field(default=None, repr=False)

    def transposed(self) -> "LatticeAction":
        return LatticeAction(self.rank, [m.T.copy() for m in self.matrices],
                             [m.T.copy() for m in self.inverses], list(self.labels))

    def exact(self) -> list[ExactMatrix]:
        return [ExactMatrix.from_dense(m.tolist()) for m in self.matrices]


class _Quotient:
    """wedge^3 H -> L, coordinates on the non-pivot trivectors."""

    def __init__(self, g: int):
        H = SymplecticSpace(g)
        self.H = H
        self.tri = exterior_basis(H.dim, 3)
        rows = [wedge_omega({i: 1}, H).to_vector() for i in range(H.dim)]
        self.pivots, self.rows = quotient_basis(rows, len(self.tri))
        piv = set(self.pivots)
        self.free = [c for c in range(len(self.tri)) if c not in piv]
        self.pos = {c: i for i, c in enumerate(self.free)}

    def __call__(self, w: dict) -> dict:
        w = dict(w)
        for p, r in zip(self.pivots, self.rows):
            c = w.get(p, 0)
            if c:
                f = c * r[p]  # r[p] = +-1
                for k, x in r.items():
                    v = w.get(k, 0) - f * x
                    if v:
                        w[k] = v
                    else:
                        w.pop(k, None)
        assert not any(p in w for p in self.pivots)
        return {self.pos[k]: c for k, c in w.items()}


@lru_cache(maxsize=None)
def _induced(g: int) -> LatticeAction:
    q = _Quotient(g)
    r = len(q.free)
    mats, invs, labels = [], [], []
    for U in unipotents(g):
        pair = []
        for op in (U, U.inverse()):
            lifted = op.lift(3)
            cols = [q(lifted.apply({c: 1})) for c in q.free]
            A = np.zeros((r, r), dtype=np.int64)
            for j, col in enumerate(cols):
                for i, x in col.items():
                    if not isinstance(x, int):
                        raise AssertionError(f"non-integral induced entry for {U.name}")
                    A[i, j] = x
            pair.append(A)
        mats.append(pair[0])
        invs.append(pair[1])
        labels.append(U.name)
    return LatticeAction(r, mats, invs, labels, q)


def induced_action(g: int) -> LatticeAction:
    """Action of the unipotents exp(X_alpha) on L = wedge^3 H / H (g >= 3)."""
    if g < 3:
        raise ValueError("need g >= 3")
    return _induced(g)


def diagram_commutes(g: int) -> bool:
    """q(M w) = A q(w) for every unipotent M and basis trivector w."""
    act = induced_action(g)
    q = act.quotient
    for U, A in zip(unipotents(g), act.matrices):
        lifted = U.lift(3)
        Ae = ExactMatrix.from_dense(A.tolist())
        for c in range(len(q.tri)):
            if q(lifted.apply({c: 1})) != Ae.apply(q({c: 1})):
                return False
    return True


def determinants(action: LatticeAction) -> list[int]:
    return [determinant(M) for M in action.exact()]


# ---------------------------------------------------------------------------
# torsion orbits


def _transports(action: LatticeAction) -> list[np.ndarray]:
    # row-vector form: t -> t @ A^{-1} for a generator A, t @ A for its inverse
    return list(action.inverses) + list(action.matrices)


def transport(action: LatticeAction, index: int, t: TorsionPoint) -> TorsionPoint:
    """Image of ``t`` under generator ``index`` (character t -> t o A^-1)."""
    m = t.order
    v = np.array(t.numerators(m), dtype=np.int64) @ action.inverses[index] % m
    return TorsionPoint.from_integers(v.tolist(), m)


@dataclass
class Orbit:
    points: frozenset
    truncated: bool
    order: int

    def __len__(self):
        return len(self.points)


def orbit(action: LatticeAction, t: TorsionPoint, cap: int = 100_000) -> Orbit:
    """Breadth-first closure of ``t`` under the generators and their inverses."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    if len(t) != action.rank:
        raise ValueError("torsion point has the wrong rank")
    m = t.order
    start = np.array(t.numerators(m), dtype=np.int64)
    seen = {start.tobytes(): start}
    frontier = start[None, :]
    maps = _transports(action)
    truncated = False
    while frontier.shape[0] and not truncated:
        new = []
        for A in maps:
            imgs = frontier @ A % m
            for row in imgs:
                key = row.tobytes()
                if key not in seen:
                    seen[key] = row
                    new.append(row)
                    if len(seen) >= cap:
                        truncated = True
                        break
            if truncated:
                break
        frontier = np.array(new, dtype=np.int64).reshape(-1, action.rank)
    pts = frozenset(TorsionPoint.from_integers(v.tolist(), m) for v in seen.values())
    return Orbit(pts, truncated, m)


def _as_array(points: Sequence[TorsionPoint], m: int) -> np.ndarray:
    return np.array([p.numerators(m) for p in points], dtype=np.int64).reshape(-1, len(points[0]) if points else 0)


def invariant_set_check(action: LatticeAction, S: Iterable[TorsionPoint]) -> bool:
    """True iff every generator maps the finite set S bijectively onto itself."""
    S = list(set(S))
    if not S:
        return True
    m = reduce(_lcm, (p.order for p in S), 1)
    X = _as_array(S, m)
    keys = {row.tobytes() for row in X}
    for Ainv in action.inverses:
        imgs = X @ Ainv % m
        img_keys = {row.tobytes() for row in imgs}
        if len(img_keys) != len(keys) or img_keys != keys:
            return False
    return True


def full_torsion_invariant(action: LatticeAction, m: int, limit: int = 1 << 24) -> bool:
    """invariant_set_check for the full m-torsion subgroup, by enumeration.

    The images of all m^rank points under a generator are built one
    coordinate at a time (image of x + d e_i = image of x + d row_i), encoded
    as base-m integers and checked to hit every code exactly once.
    """
    r = action.rank
    total = m ** r
    if total > limit:
        raise ValueError(f"{m}^{r} points exceed the enumeration limit {limit}")
    if not 2 <= m <= 127:
        raise ValueError("modulus must lie in 2..127")
    weights = (m ** np.arange(r - 1, -1, -1)).astype(np.int64)
    steps = np.arange(m, dtype=np.uint8)
    for Ainv in action.inverses:
        Ainv = (Ainv % m).astype(np.uint8)
        img = np.zeros((1, r), dtype=np.uint8)
        for i in range(r):
            table = (steps[:, None].astype(np.int64) * Ainv[i][None, :] % m).astype(np.uint8)
            img = ((img[None, :, :] + table[:, None, :]) % m).reshape(-1, r)
        codes = img.astype(np.int64) @ weights
        if not (np.bincount(codes, minlength=total) == 1).all():
            return False
    return True


def full_torsion(rank: int, m: int) -> Iterable[TorsionPoint]:
    for v in product(range(m), repeat=rank):
        yield TorsionPoint.from_integers(v, m)


def random_torsion_point(rng: random.Random, rank: int, m: int) -> TorsionPoint:
    while True:
        t = TorsionPoint.from_integers([rng.randrange(m) for _ in range(rank)], m)
        if any(t):
            return t


# ---------------------------------------------------------------------------
# irreducibility


def _spin_full(mats: Sequence[ExactMatrix], v: dict, n: int) -> Subspace:
    return spin(mats, [v], ambient=n)


def irreducibility_witness(action: LatticeAction, trials: int = 20, seed: int = 0) -> dict:
    """Certify irreducibility of the action on L (x) Q, or report inconclusive.

    Each trial draws a random element theta of the matrix algebra generated
    by the action and factors its characteristic polynomial.  For an
    irreducible factor f occurring once, with nullity(f(theta)) = deg f, a
    vector of ker f(theta) whose spin is everything and a covector of
    ker f(theta)^T whose spin under the transposes is everything together
    rule out proper invariant subspaces.  A proper spin of such a vector is
    returned as a witness of reducibility.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    n = action.rank
    mats = action.exact()
    mats_T = [M.transpose() for M in mats]
    dms = [DomainMatrix([[QQ(int(x)) for x in row] for row in A.tolist()], (n, n), QQ) for A in action.matrices]
    x = sympy.Symbol("x")
    for trial in range(trials):
        theta = DomainMatrix.zeros((n, n), QQ)
        for _ in range(3):
            i, j = rng.randrange(len(dms)), rng.randrange(len(dms))
            theta = theta + dms[i] * QQ(rng.randint(1, 5)) + (dms[i] * dms[j]) * QQ(rng.randint(-3, 3))
        cp = sympy.Poly(theta.charpoly(), x, domain="QQ")
        _, factors = cp.factor_list()
        for f, mult in sorted(factors, key=lambda fm: fm[0].degree()):
            if mult != 1:
                continue
            deg = f.degree()
            if deg == n:
                return {"irreducible": True, "trial": trial, "factor_degree": deg, "method": "irreducible charpoly"}
            F = DomainMatrix.zeros((n, n), QQ)
            for c in f.all_coeffs():
                F = F * theta + DomainMatrix.eye(n, QQ) * QQ.from_sympy(c)
            null = F.nullspace()
            if null.shape[0] != deg:
                continue
            v = {k: Fraction(int(c.numerator), int(c.denominator)) for k, c in enumerate(null.to_Matrix().row(0)) if c}
            null_T = F.transpose().nullspace()
            w = {k: Fraction(int(c.numerator), int(c.denominator)) for k, c in enumerate(null_T.to_Matrix().row(0)) if c}
            Sv = _spin_full(mats, v, n)
            if Sv.dim < n:
                return {"irreducible": False, "trial": trial, "invariant_subspace_dim": Sv.dim}
            Sw = _spin_full(mats_T, w, n)
            if Sw.dim < n:
                return {"irreducible": False, "trial": trial, "invariant_subspace_dim": n - Sw.dim}
            return {"irreducible": True, "trial": trial, "factor_degree": deg, "method": "kernel spin"}
    return {"irreducible": "inconclusive", "trials": trials}
