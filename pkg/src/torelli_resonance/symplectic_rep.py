"""The symplectic lattice H, the Lie algebra sp_g acting on its exterior
algebra, weights, and integral unipotent elements of Sp_g(Z).

Basis order of H is ``a_1..a_g, b_1..b_g`` (indices ``0..2g-1``), with
intersection form ``a_i . b_i = 1``.

Root vector normalization (type C_g, roots written in the coordinates
``t_1..t_g`` of the diagonal Cartan subalgebra)::

    X[t_i - t_j]:  a_j -> a_i,   b_i -> -b_j
    X[t_i + t_j]:  b_j -> a_i,   b_i -> a_j
    X[2 t_i]:      b_i -> a_i

and every negative root vector is the transpose of the positive one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exact_linalg import (
    ExactMatrix,
    Multivector,
    Subspace,
    as_rational,
    axpy,
    determinant,
    exterior_power_matrix,
    inverse,
    merge_sign,
    rank_kernel,
    sort_sign,
)

LIE = "lie"
GROUP = "group"


class SymplecticSpace:
    """H = Z^{2g} with its standard symplectic basis."""

    def __init__(self, genus: int):
        if genus < 1:
            raise ValueError("genus must be positive")
        self.genus = genus
        self.dim = 2 * genus
        self.labels = [f"a{i}" for i in range(1, genus + 1)] + [f"b{i}" for i in range(1, genus + 1)]
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def a(self, i: int) -> int:
        """Basis index of ``a_i`` (1-based ``i``)."""
        if not 1 <= i <= self.genus:
            raise IndexError(i)
        return i - 1

    def b(self, i: int) -> int:
        if not 1 <= i <= self.genus:
            raise IndexError(i)
        return self.genus + i - 1

    def index(self, label: str) -> int:
        return self._index[label]

    def form(self, i: int, j: int) -> int:
        """Intersection pairing of basis vectors ``i`` and ``j``."""
        g = self.genus
        if i < g and j == i + g:
            return 1
        if j < g and i == j + g:
            return -1
        return 0

    def pairing(self, u: Mapping, v: Mapping):
        return sum((x * y * self.form(i, j) for i, x in u.items() for j, y in v.items()), 0)

    def wedge(self, *labels: str) -> Multivector:
        """Basis multivector from labels, e.g. ``H.wedge("a1", "a2", "b3")``."""
        return Multivector.basis(self.dim, [self._index[x] for x in labels])

    def omega(self) -> Multivector:
        """The symplectic form sum_i a_i ^ b_i."""
        return Multivector(self.dim, 2, {(self.a(i), self.b(i)): 1 for i in range(1, self.genus + 1)})

    def basis_weight(self, i: int) -> "Weight":
        g = self.genus
        c = [0] * g
        if i < g:
            c[i] = 1
        else:
            c[i - g] = -1
        return Weight(c)

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and other.genus == self.genus

    def __hash__(self):
        return hash(("SymplecticSpace", self.genus))

    def __repr__(self):
        return f"SymplecticSpace(g={self.genus})"


class Weight(tuple):
    """Integral weight sum_i c_i t_i, stored as the integer vector (c_1..c_g)."""

    def __new__(cls, coeffs: Iterable[int]):
        return super().__new__(cls, tuple(int(c) for c in coeffs))

    @classmethod
    def fundamental(cls, j: int, g: int) -> "Weight":
        """lambda_j = t_1 + ... + t_j."""
        if not 0 <= j <= g:
            raise ValueError("fundamental weight index out of range")
        return cls([1] * j + [0] * (g - j))

    @classmethod
    def zero(cls, g: int) -> "Weight":
        return cls([0] * g)

    def __add__(self, other):
        if len(self) != len(other):
            raise ValueError("weights of different rank")
        return Weight(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return self + (-Weight(other))

    def __neg__(self):
        return Weight(-a for a in self)

    def __mul__(self, k: int):
        return Weight(k * a for a in self)

    __rmul__ = __mul__

    def __call__(self, h: Sequence[int]):
        """Evaluate on a Cartan element given by its coordinates."""
        return sum(a * b for a, b in zip(self, h))

    def __str__(self):
        terms = []
        for i, c in enumerate(self, 1):
            if c == 0:
                continue
            coef = "" if abs(c) == 1 else str(abs(c))
            terms.append(("-" if c < 0 else "+") + f"{coef}t{i}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s

    def __repr__(self):
        return f"Weight({list(self)})"


@dataclass(frozen=True, eq=False)
class RepOperator:
    """Linear operator on a based space.

    ``kind`` is ``"lie"`` (acts on exterior powers by derivations) or
    ``"group"`` (acts by algebra automorphisms).
    """

    kind: str
    matrix: ExactMatrix
    root: Weight | None = None
    name: str = ""
    _lifts: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in (LIE, GROUP):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("operator matrix must be square")

    @property
    def dim(self) -> int:
        return self.matrix.cols

    def apply(self, v: Mapping) -> dict:
        return self.matrix.apply(v)

    def act(self, w: Multivector) -> Multivector:
        """Induced action on a homogeneous multivector over the operator's space."""
        if not isinstance(w, Multivector):
            raise TypeError("act expects a Multivector")
        if w.dim != self.dim:
            raise ValueError(f"operator on dim {self.dim} applied to multivector over dim {w.dim}")
        cols = self.matrix.columns
        out: dict = {}
        if self.kind == LIE:
            for t, c in w.items():
                for pos, j in enumerate(t):
                    for i, x in cols[j].items():
                        s, tt = sort_sign(t[:pos] + (i,) + t[pos + 1 :])
                        if s:
                            axpy(out, s * c * x, {tt: 1})
        else:
            for t, c in w.items():
                acc = {(): c}
                for j in t:
                    nxt: dict = {}
                    for p, a in acc.items():
                        for i, x in cols[j].items():
                            s, tt = merge_sign(p, (i,))
                            if s:
                                axpy(nxt, s * a * x, {tt: 1})
                    acc = nxt
                axpy(out, 1, acc)
        return Multivector(w.dim, w.degree, out)

    def lift(self, k: int) -> "RepOperator":
        """The same operator acting on the k-th exterior power (cached)."""
        op = self._lifts.get(k)
        if op is None:
            m = exterior_power_matrix(self.matrix, k, derivation=self.kind == LIE)
            op = RepOperator(self.kind, m, self.root, f"{self.name}^{k}" if self.name else "")
            self._lifts[k] = op
        return op

    def bracket(self, other: "RepOperator") -> "RepOperator":
        if self.kind != LIE or other.kind != LIE:
            raise ValueError("bracket is defined for Lie-kind operators")
        return RepOperator(LIE, self.matrix @ other.matrix - other.matrix @ self.matrix)

    def __matmul__(self, other: "RepOperator") -> "RepOperator":
        if self.kind != other.kind:
            raise ValueError("cannot compose operators of different kinds")
        return RepOperator(self.kind, self.matrix @ other.matrix)

    def inverse(self) -> "RepOperator":
        if self.kind != GROUP:
            raise ValueError("only group-kind operators are inverted")
        name = f"{self.name}^-1" if self.name else ""
        return RepOperator(GROUP, inverse(self.matrix), None, name)

    def restrict(self, space: Subspace) -> "RepOperator":
        """The operator on an invariant subspace, in echelon-basis coordinates."""
        return RepOperator(self.kind, space.restrict(self), self.root, self.name)

    def __repr__(self):
        return f"RepOperator({self.kind}, {self.name or '?'}, dim={self.dim})"


def act(op: RepOperator, w: Multivector) -> Multivector:
    return op.act(w)


# ---------------------------------------------------------------------------
# root system and generators


def positive_roots(g: int) -> list[Weight]:
    """t_i - t_j, t_i + t_j (i < j) and 2 t_i."""
    roots = []
    for i in range(g):
        for j in range(i + 1, g):
            r = [0] * g
            r[i], r[j] = 1, -1
            roots.append(Weight(r))
            r = [0] * g
            r[i], r[j] = 1, 1
            roots.append(Weight(r))
    for i in range(g):
        r = [0] * g
        r[i] = 2
        roots.append(Weight(r))
    return roots


def roots(g: int) -> list[Weight]:
    pos = positive_roots(g)
    return pos + [-r for r in pos]


def is_positive(alpha: Sequence[int]) -> bool:
    first = next((c for c in alpha if c), 0)
    return first > 0


def _root_matrix(g: int, alpha: Weight) -> ExactMatrix:
    H = SymplecticSpace(g)
    a, b = H.a, H.b
    nz = [(i + 1, c) for i, c in enumerate(alpha) if c]
    trip = []
    if len(nz) == 1:
        (i, c), = nz
        if c == 2:
            trip.append((a(i), b(i), 1))
        elif c == -2:
            trip.append((b(i), a(i), 1))
        else:
            raise ValueError(f"not a root: {alpha}")
    elif len(nz) == 2 and all(abs(c) == 1 for _, c in nz):
        (i, ci), (j, cj) = nz
        if ci == 1 and cj == -1 or ci == -1 and cj == 1:
            if ci == -1:
                i, j = j, i
            # t_i - t_j
            trip += [(a(i), a(j), 1), (b(j), b(i), -1)]
        elif ci == cj == 1:
            trip += [(a(i), b(j), 1), (a(j), b(i), 1)]
        else:
            trip += [(b(i), a(j), 1), (b(j), a(i), 1)]
    else:
        raise ValueError(f"not a root: {alpha}")
    return ExactMatrix.from_triplets(2 * g, 2 * g, trip)


def root_name(alpha: Weight) -> str:
    return f"X[{alpha}]"


@lru_cache(maxsize=None)
def _sp_generators(g: int) -> tuple:
    if g < 2:
        raise ValueError("sp_g generators need g >= 2")
    H = SymplecticSpace(g)
    gens = []
    for k in range(1, g + 1):
        m = ExactMatrix.from_triplets(2 * g, 2 * g, [(H.a(k), H.a(k), 1), (H.b(k), H.b(k), -1)])
        gens.append(RepOperator(LIE, m, None, f"h{k}"))
    for alpha in roots(g):
        gens.append(RepOperator(LIE, _root_matrix(g, alpha), alpha, root_name(alpha)))
    return tuple(gens)


def sp_generators(g: int) -> list[RepOperator]:
    """Cartan basis h_1..h_g followed by one root vector per root (positive first)."""
    return list(_sp_generators(g))


def cartan(ops: Sequence[RepOperator]) -> list[RepOperator]:
    return [op for op in ops if op.root is None]


def positive_root_vectors(ops: Sequence[RepOperator]) -> list[RepOperator]:
    return [op for op in ops if op.root is not None and is_positive(op.root)]


def negative_root_vectors(ops: Sequence[RepOperator]) -> list[RepOperator]:
    return [op for op in ops if op.root is not None and not is_positive(op.root)]


def exp_nilpotent(X: ExactMatrix) -> ExactMatrix:
    """exp(X) for nilpotent X, summed exactly until the powers vanish."""
    n = X.rows
    result = ExactMatrix.identity(n)
    term = ExactMatrix.identity(n)
    for k in range(1, n + 2):
        term = (term @ X) * Fraction(1, k)
        if term.nnz == 0:
            return result
        result = result + term
    raise ValueError("matrix is not nilpotent")


@lru_cache(maxsize=None)
def _unipotents(g: int) -> tuple:
    out = []
    for op in _sp_generators(g):
        if op.root is None:
            continue
        M = exp_nilpotent(op.matrix)
        assert M.is_integral(), f"non-integral exponential for {op.name}"
        out.append(RepOperator(GROUP, M, op.root, f"exp {op.name}"))
    return tuple(out)


def unipotents(g: int) -> list[RepOperator]:
    """exp(X_alpha) for every root alpha: integral symplectic transvection-type elements."""
    if g < 2:
        raise ValueError("need g >= 2")
    return list(_unipotents(g))


def is_infinitesimally_symplectic(op: RepOperator, H: SymplecticSpace) -> bool:
    cols = op.matrix.columns
    n = H.dim
    for u in range(n):
        for v in range(n):
            if H.pairing(cols[u], {v: 1}) + H.pairing({u: 1}, cols[v]):
                return False
    return True


def is_symplectic(op: RepOperator, H: SymplecticSpace) -> bool:
    M = op.matrix
    if not M.is_integral() or determinant(M) != 1:
        return False
    cols = M.columns
    return all(
        H.pairing(cols[u], cols[v]) == H.form(u, v) for u in range(H.dim) for v in range(H.dim)
    )


# ---------------------------------------------------------------------------
# weights


def weight_of(w, cartan_ops: Sequence[RepOperator]) -> Weight:
    """Weight of a simultaneous Cartan eigenvector.

    ``w`` is a Multivector over the Cartan operators' space (acted on through
    the induced derivation) or a plain vector in that space.  Raises
    ``ValueError`` for the zero vector or a non-homogeneous vector.
    """
    if isinstance(w, Multivector):
        if not w:
            raise ValueError("the zero vector has no weight")
        key, ref = next(iter(w.items()))
        images = [h.act(w) for h in cartan_ops]
        same = lambda img, c: img == w * c
    else:
        if not w:
            raise ValueError("the zero vector has no weight")
        key, ref = next(iter(w.items()))
        images = [h.apply(w) for h in cartan_ops]
        same = lambda img, c: img == {k: c * x for k, x in w.items() if c * x}
    coeffs = []
    for img in images:
        c = as_rational(Fraction(img[key] if isinstance(img, Multivector) else img.get(key, 0)) / ref)
        if not same(img, c):
            raise ValueError("vector is not weight-homogeneous")
        if not isinstance(c, int):
            raise ValueError(f"non-integral weight coordinate {c}")
        coeffs.append(c)
    return Weight(coeffs)


def weight_spaces(cartan_ops: Sequence[RepOperator], space: Subspace | None = None) -> dict[Weight, Subspace]:
    """Simultaneous eigenspace decomposition for commuting Cartan operators.

    The operators must act diagonalizably with integer eigenvalues on
    ``space`` (default: the whole ambient space).
    """
    if not cartan_ops:
        raise ValueError("no Cartan operators given")
    n = cartan_ops[0].dim
    pieces = [((), space if space is not None else Subspace.full(n))]
    for h in cartan_ops:
        refined = []
        for label, S in pieces:
            A = S.restrict(h)
            bound = max((sum(abs(c) for c in col.values()) for col in A.columns), default=0)
            found = 0
            for c in range(-int(bound), int(bound) + 1):
                shifted = A - ExactMatrix.identity(A.rows) * c
                _, ker = rank_kernel(shifted)
                if ker.dim == 0:
                    continue
                vecs = []
                rows = S.basis
                for k in ker.basis:
                    v: dict = {}
                    for i, x in k.items():
                        axpy(v, x, rows[i])
                    vecs.append(v)
                refined.append((label + (c,), Subspace(n, vecs)))
                found += ker.dim
            if found != S.dim:
                raise ValueError("Cartan action is not diagonalizable over the integers here")
        pieces = refined
    return {Weight(label): S for label, S in pieces}
