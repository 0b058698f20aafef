"""The Torelli representation V = (wedge^3 H / H) (x) Q.

V is realized as the kernel L' of Johnson's contraction
``C(x^y^z) = (x.y) z + (y.z) x + (z.x) y``.  A trivector basis element whose
column of C vanishes is its own basis vector of L', so the distinguished
vectors a1^a2^a3, a1^a2^b_k and b1^b2^b3 are coordinate vectors of V.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .exact_linalg import (
    ExactMatrix,
    Multivector,
    Subspace,
    axpy,
    exterior_basis,
    joint_kernel,
    rank_kernel,
    spin,
)
from .symplectic_rep import (
    RepOperator,
    SymplecticSpace,
    Weight,
    cartan,
    negative_root_vectors,
    positive_root_vectors,
    sp_generators,
    unipotents,
    weight_of,
)


def contraction(w: Multivector, H: SymplecticSpace) -> Multivector:
    """Johnson's contraction of a trivector, returned as a degree-1 multivector."""
    if w.degree != 3:
        raise ValueError(f"contraction needs a trivector, got degree {w.degree}")
    if w.dim != H.dim:
        raise ValueError("trivector not over this symplectic space")
    out: dict = {}
    for (x, y, z), c in w.items():
        for (p, q, r) in ((x, y, z), (y, z, x), (z, x, y)):
            f = H.form(p, q)
            if f:
                axpy(out, c * f, {(r,): 1})
    return Multivector(H.dim, 1, out)


def contraction_matrix(H: SymplecticSpace) -> ExactMatrix:
    basis = exterior_basis(H.dim, 3)
    cols = []
    for t in basis.tuples:
        img = contraction(Multivector(H.dim, 3, {t: 1}), H)
        cols.append({k[0]: c for k, c in img.items()})
    return ExactMatrix(H.dim, len(basis), cols)


def wedge_omega(x: Mapping, H: SymplecticSpace) -> Multivector:
    """The embedding H -> wedge^3 H, h -> h ^ omega."""
    return Multivector(H.dim, 1, {(i,): c for i, c in x.items()}).wedge(H.omega())


class TorelliRep:
    """sp_g and the unipotents acting on V = ker C, with cached derived data.

    Coordinates of V are indexed by the free columns of C (``self.columns``);
    ``coords`` and ``embed`` convert between V and wedge^3 H.
    """

    def __init__(self, g: int):
        if g < 3:
            raise ValueError("the Torelli representation needs g >= 3")
        self.g = g
        self.H = SymplecticSpace(g)
        self.tri = exterior_basis(2 * g, 3)
        self.C = contraction_matrix(self.H)
        rank, self.lprime = rank_kernel(self.C)
        assert rank == 2 * g
        self.columns = self.lprime.pivots
        self._pos = {c: i for i, c in enumerate(self.columns)}
        self.dim = len(self.columns)
        self.pair = exterior_basis(self.dim, 2)
        self.sp_ops = sp_generators(g)
        self.unipotents_H = unipotents(g)
        self.generators = [self._on_V(op) for op in self.sp_ops]
        self.unipotent_ops = [self._on_V(op) for op in self.unipotents_H]
        self.basis_weights = [weight_of(Multivector.from_vector(2 * g, 3, v), cartan(self.sp_ops))
                              for v in self.lprime.basis]

    # -- coordinates -------------------------------------------------------

    def coords(self, w: Mapping) -> dict:
        """V-coordinates of a vector of wedge^3 H lying in L'."""
        if self.lprime.reduce(w):
            raise ValueError("trivector is not in ker C")
        return {self._pos[k]: c for k, c in w.items() if k in self._pos}

    def embed(self, v: Mapping) -> dict:
        out: dict = {}
        rows = self.lprime._rows
        for i, c in v.items():
            axpy(out, c, rows[i])
        return out

    def vector(self, *labels: str) -> dict:
        """V-vector of a basis trivector given by labels, e.g. ``("a1", "a2", "b3")``."""
        return self.coords(self.H.wedge(*labels).to_vector())

    def _on_V(self, op: RepOperator) -> RepOperator:
        lifted = op.lift(3)
        cols = [self.coords(lifted.apply(r)) for r in self.lprime._rows]
        return RepOperator(op.kind, ExactMatrix(self.dim, self.dim, cols), op.root, op.name)

    @property
    def cartan(self) -> list[RepOperator]:
        return cartan(self.generators)

    @property
    def positive(self) -> list[RepOperator]:
        return positive_root_vectors(self.generators)

    @property
    def negative(self) -> list[RepOperator]:
        return negative_root_vectors(self.generators)

    def pair_weight(self, k: int) -> Weight:
        i, j = self.pair.tuples[k]
        return self.basis_weights[i] + self.basis_weights[j]

    @cached_property
    def wedge2_generators(self) -> list[RepOperator]:
        return [op.lift(2) for op in self.generators]

    # -- distinguished vectors --------------------------------------------

    @cached_property
    def v0(self) -> dict:
        """a1^a2^a3 in V."""
        return self.vector("a1", "a2", "a3")

    @cached_property
    def vbar0(self) -> dict:
        """b1^b2^b3 in V (lowest weight vector)."""
        return self.vector("b1", "b2", "b3")

    @cached_property
    def u0(self) -> dict:
        """sum_{k>=3} (a1^a2^ak) ^ (a1^a2^bk) in wedge^2 V."""
        out: dict = {}
        for k in range(3, self.g + 1):
            axpy(out, 1, self.wedge_vectors(self.vector("a1", "a2", f"a{k}"), self.vector("a1", "a2", f"b{k}")))
        return out

    def wedge_vectors(self, *vs: Mapping) -> dict:
        """Wedge of V-vectors, as a vector in the matching exterior power of V."""
        mv = Multivector(self.dim, 0, {(): 1})
        for v in vs:
            mv = mv.wedge(Multivector(self.dim, 1, {(i,): c for i, c in v.items()}))
        return mv.to_vector()

    @cached_property
    def z0(self) -> dict:
        """Spanning vector of the sp-invariant line in wedge^2 V."""
        inv = invariant_vectors(self)
        if inv.dim != 1:
            raise RuntimeError(f"expected a unique invariant line in wedge^2 V, found dimension {inv.dim}")
        return inv.basis[0]

    @cached_property
    def highest(self) -> Subspace:
        """spin of u0 under sp_g inside wedge^2 V, i.e. V(2 lambda_2)."""
        return spin(self.wedge2_generators, [self.u0], ambient=len(self.pair), grading=self.pair_weight)

    @cached_property
    def W(self) -> Subspace:
        return self.highest + Subspace(len(self.pair), [self.z0])

    def __repr__(self):
        return f"TorelliRep(g={self.g}, dim V={self.dim})"


@lru_cache(maxsize=None)
def build_rep(g: int) -> TorelliRep:
    """The Torelli representation for genus ``g`` (cached; g >= 3)."""
    return TorelliRep(g)


def invariant_vectors(rep: TorelliRep) -> Subspace:
    """Joint kernel of all of sp_g on wedge^2 V (Cartan operators first)."""
    return joint_kernel(rep.wedge2_generators, ambient=len(rep.pair))


def maximal_vectors(ops: Sequence[RepOperator], space: Subspace) -> Subspace:
    """Vectors of ``space`` killed by every positive root vector among ``ops``.

    ``space`` must be invariant under those root vectors.
    """
    pos = positive_root_vectors(ops)
    if not pos:
        raise ValueError("no positive root vectors among the operators")
    for op in pos:
        if not space.is_invariant(op):
            raise ValueError(f"space is not invariant under {op.name}")
    return joint_kernel(pos, space)


def build_W(rep: TorelliRep) -> Subspace:
    """The submodule V(2 lambda_2) + V(0) of wedge^2 V."""
    return rep.W


def distinguished_vectors(rep: TorelliRep) -> dict:
    return {"v0": rep.v0, "u0": rep.u0, "z0": rep.z0}


def nilpotency_index(op: RepOperator, space: Subspace, bound: int) -> int:
    """Smallest r <= bound with op^r = 0 on ``space``; raises if none."""
    vecs = space.basis
    for r in range(bound + 1):
        if not any(vecs):
            return r
        vecs = [op.apply(v) for v in vecs]
    raise ValueError(f"{op.name} is not nilpotent within {bound} steps")
