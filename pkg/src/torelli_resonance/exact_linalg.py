"""Exact sparse linear algebra over Q and exterior-algebra bookkeeping.

Vectors are plain ``dict[int, Rational]`` maps from coordinate index to a
nonzero exact rational (``int`` or ``fractions.Fraction``).  Nothing in this
module touches floating point; the only non-rational arithmetic is the
modular rank bound, which is used as a one-sided certificate.
"""

from __future__ import annotations

import heapq
from collections import defaultdict, deque
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from numbers import Rational
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

Vector = dict  # dict[int, Rational], zero entries never stored

#: Prime used for modular rank lower bounds; (p - 1)**2 fits in int64.
PRIME = 2_147_483_647


def as_rational(x) -> Rational:
    """Coerce ``x`` (int, Fraction, or ``"p/q"`` string) to an exact rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x.strip()))
    if isinstance(x, Rational):
        return as_rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def _div(a, b) -> Rational:
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def sparse(v) -> Vector:
    """Normalize a dense sequence or a mapping into a sparse vector."""
    if isinstance(v, Mapping):
        items = v.items()
    else:
        items = enumerate(v)
    out = {}
    for k, c in items:
        c = as_rational(c)
        if c:
            out[int(k)] = c
    return out


def axpy(y: Vector, a, x: Mapping) -> None:
    """In place ``y += a * x``, dropping cancelled entries."""
    if not a:
        return
    for k, c in x.items():
        s = y.get(k, 0) + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scale(v: Mapping, a) -> Vector:
    if not a:
        return {}
    return {k: a * c for k, c in v.items()}


def add(u: Mapping, v: Mapping) -> Vector:
    out = dict(u)
    axpy(out, 1, v)
    return out


def dot(u: Mapping, v: Mapping):
    if len(u) > len(v):
        u, v = v, u
    return sum((c * v[k] for k, c in u.items() if k in v), 0)


# ---------------------------------------------------------------------------
# exterior powers


class ExteriorBasis:
    """Lexicographically ordered basis of the k-th exterior power of Q^n."""

    __slots__ = ("n", "k", "tuples", "index")

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.tuples = list(combinations(range(n), k))
        self.index = {t: i for i, t in enumerate(self.tuples)}

    def __len__(self):
        return len(self.tuples)

    def __repr__(self):
        return f"ExteriorBasis(n={self.n}, k={self.k})"


@lru_cache(maxsize=64)
def exterior_basis(n: int, k: int) -> ExteriorBasis:
    return ExteriorBasis(n, k)


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation of ``idx`` and the sorted tuple.

    Returns ``(0, ())`` when an index repeats.
    """
    idx = list(idx)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i] == idx[i - 1]:
            return 0, ()
    return sign, tuple(idx)


def merge_sign(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Wedge two sorted index tuples: sign of the merge shuffle and the merged tuple."""
    if not p:
        return 1, q
    if not q:
        return 1, p
    inversions = 0
    out = []
    i = j = 0
    while i < len(p) and j < len(q):
        if p[i] < q[j]:
            out.append(p[i])
            i += 1
        elif p[i] > q[j]:
            inversions += len(p) - i
            out.append(q[j])
            j += 1
        else:
            return 0, ()
    out.extend(p[i:])
    out.extend(q[j:])
    return (-1 if inversions & 1 else 1), tuple(out)


class Multivector:
    """Homogeneous element of the exterior power of a based Q-space.

    ``dim`` is the ambient dimension, ``degree`` the exterior degree, and the
    coefficients are keyed by strictly increasing index tuples.
    """

    __slots__ = ("dim", "degree", "_coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Mapping | None = None):
        if dim < 0 or degree < 0:
            raise ValueError("dimension and degree must be non-negative")
        self.dim = dim
        self.degree = degree
        clean = {}
        for t, c in (coeffs or {}).items():
            t = tuple(t)
            if len(t) != degree:
                raise ValueError(f"index tuple {t} has length != {degree}")
            if any(b <= a for a, b in zip(t, t[1:])):
                raise ValueError(f"index tuple {t} is not strictly increasing")
            if t and not (0 <= t[0] and t[-1] < dim):
                raise ValueError(f"index tuple {t} out of range for dim {dim}")
            c = as_rational(c)
            if c:
                clean[t] = c
        self._coeffs = clean

    @classmethod
    def _trusted(cls, dim, degree, coeffs):
        mv = cls.__new__(cls)
        mv.dim = dim
        mv.degree = degree
        mv._coeffs = coeffs
        return mv

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], coeff=1) -> "Multivector":
        """The wedge ``e_{i1} ^ ... ^ e_{ik}`` of basis vectors (any order)."""
        sign, t = sort_sign(indices)
        if not sign:
            return cls(dim, len(indices))
        return cls(dim, len(indices), {t: sign * as_rational(coeff)})

    @classmethod
    def from_vector(cls, dim: int, degree: int, vec: Mapping) -> "Multivector":
        tuples = exterior_basis(dim, degree).tuples
        return cls._trusted(dim, degree, {tuples[i]: c for i, c in vec.items() if c})

    def to_vector(self) -> Vector:
        index = exterior_basis(self.dim, self.degree).index
        return {index[t]: c for t, c in self._coeffs.items()}

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, t):
        return self._coeffs.get(tuple(t), 0)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"ambient mismatch: {self.dim} vs {other.dim}")
        return None

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._coeffs
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.dim != other.dim or self._coeffs != other._coeffs:
            return False
        return self.degree == other.degree or not self._coeffs

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self._coeffs.items())))

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if other.degree != self.degree and self and other:
            raise ValueError("cannot add multivectors of different degree")
        out = dict(self._coeffs)
        axpy(out, 1, other._coeffs)
        return Multivector._trusted(self.dim, self.degree, out)

    def __neg__(self):
        return Multivector._trusted(self.dim, self.degree, scale(self._coeffs, -1))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, Multivector):
            return NotImplemented
        return Multivector._trusted(self.dim, self.degree, scale(self._coeffs, as_rational(c)))

    __rmul__ = __mul__

    def wedge(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out: dict = {}
        for p, a in self._coeffs.items():
            for q, b in other._coeffs.items():
                s, t = merge_sign(p, q)
                if s:
                    v = out.get(t, 0) + s * a * b
                    if v:
                        out[t] = v
                    else:
                        out.pop(t, None)
        return Multivector._trusted(self.dim, self.degree + other.degree, out)

    __xor__ = wedge

    def __repr__(self):
        if not self._coeffs:
            return f"Multivector(dim={self.dim}, degree={self.degree}, 0)"
        terms = " + ".join(f"{c}*e{t}" for t, c in sorted(self._coeffs.items()))
        return f"Multivector(dim={self.dim}, {terms})"


def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Exterior product; raises ``ValueError`` on mismatched ambient spaces."""
    return u.wedge(v)


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Sparse rows x cols matrix with exact rational entries, stored by column."""

    __slots__ = ("rows", "cols", "_columns")

    def __init__(self, rows: int, cols: int, columns: Sequence[Mapping] | None = None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("wrong number of columns")
        cl = []
        for col in columns:
            col = sparse(col)
            if col and not (0 <= min(col) and max(col) < rows):
                raise ValueError("row index out of range")
            cl.append(col)
        self._columns = tuple(cl)

    @classmethod
    def _trusted(cls, rows, cols, columns):
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._columns = tuple(columns)
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "ExactMatrix":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(rows, cols, [{i: data[i][j] for i in range(rows)} for j in range(cols)])

    @classmethod
    def from_rows(cls, rows: int, cols: int, row_vectors: Sequence[Mapping]) -> "ExactMatrix":
        columns = [{} for _ in range(cols)]
        for i, r in enumerate(row_vectors):
            for j, c in r.items():
                if c:
                    columns[j][i] = c
        return cls(rows, cols, columns)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable) -> "ExactMatrix":
        columns = [{} for _ in range(cols)]
        for i, j, c in triplets:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i}, {j}) outside {rows}x{cols}")
            c = as_rational(c)
            s = columns[j].get(i, 0) + c
            if s:
                columns[j][i] = s
            else:
                columns[j].pop(i, None)
        return cls._trusted(rows, cols, columns)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._trusted(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._trusted(rows, cols, [{} for _ in range(cols)])

    def column(self, j: int) -> Vector:
        return dict(self._columns[j])

    @property
    def columns(self) -> tuple:
        return self._columns

    def row_vectors(self) -> list[Vector]:
        out = [{} for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, c in col.items():
                out[i][j] = c
        return out

    def triplets(self):
        for j, col in enumerate(self._columns):
            for i, c in sorted(col.items()):
                yield i, j, c

    def __getitem__(self, ij):
        i, j = ij
        return self._columns[j].get(i, 0)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def apply(self, v: Mapping) -> Vector:
        out: dict = {}
        for j, c in v.items():
            axpy(out, c, self._columns[j])
        return out

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return ExactMatrix._trusted(self.rows, other.cols, [self.apply(c) for c in other._columns])

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix._trusted(self.rows, self.cols, [add(a, b) for a, b in zip(self._columns, other._columns)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other * -1

    def __mul__(self, c) -> "ExactMatrix":
        c = as_rational(c)
        return ExactMatrix._trusted(self.rows, self.cols, [scale(col, c) for col in self._columns])

    __rmul__ = __mul__

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._trusted(self.cols, self.rows, self.row_vectors())

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, c in col.items():
                out[i][j] = c
        return out

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for col in self._columns for c in col.values())

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._columns) == (other.rows, other.cols, other._columns)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(frozenset(c.items()) for c in self._columns)))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# echelon forms


class _Echelon:
    """Incrementally maintained reduced row echelon form.

    With ``reverse=True`` the pivot of a row is its largest index; rank
    computations use that orientation because the kernel basis read off from
    it is already in (standard) reduced echelon form.
    """

    __slots__ = ("rows", "reverse", "_where")

    def __init__(self, reverse: bool = False):
        self.rows: dict[int, Vector] = {}
        self.reverse = reverse
        # column -> pivots of rows holding a nonzero entry there (pivot column excluded)
        self._where: dict[int, set] = defaultdict(set)

    def reduce(self, v: Mapping) -> Vector:
        v = dict(v)
        rows = self.rows
        for p in [k for k in v if k in rows]:
            c = v[p]
            row = rows[p]
            for k, x in row.items():
                s = v.get(k, 0) - c * x
                if s:
                    v[k] = s
                else:
                    del v[k]
        return v

    def insert(self, v: Mapping) -> Vector | None:
        """Add ``v`` to the row space; return the new normalized row, or None."""
        r = self.reduce(v)
        if not r:
            return None
        piv = max(r) if self.reverse else min(r)
        lead = r[piv]
        if lead != 1:
            r = {k: _div(c, lead) for k, c in r.items()}
        where = self._where
        for p in list(where.get(piv, ())):
            row = self.rows[p]
            c = row[piv]
            for k, x in r.items():
                s = row.get(k, 0) - c * x
                if s:
                    if k not in row and k != p:
                        where[k].add(p)
                    row[k] = s
                else:
                    row.pop(k, None)
                    if k != p:
                        where[k].discard(p)
        where.pop(piv, None)
        self.rows[piv] = r
        for k in r:
            if k != piv:
                where[k].add(piv)
        return r

    def __len__(self):
        return len(self.rows)


def _forward_rank(row_vectors: Iterable[Mapping]) -> int:
    """Rank via non-reduced elimination (leading = smallest index)."""
    pivots: dict[int, Vector] = {}
    for v in row_vectors:
        v = dict(v)
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            if k not in v:
                continue
            row = pivots.get(k)
            if row is None:
                lead = v[k]
                pivots[k] = {j: _div(c, lead) for j, c in v.items()} if lead != 1 else v
                break
            c = v[k]
            for j, x in row.items():
                if j not in v:
                    heapq.heappush(heap, j)
                s = v.get(j, 0) - c * x
                if s:
                    v[j] = s
                else:
                    v.pop(j, None)
    return len(pivots)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of Q^n stored as its reduced row echelon basis.

    Two subspaces are equal exactly when their stored bases are equal.
    """

    __slots__ = ("ambient", "_rows", "_pivots", "_index")

    def __init__(self, ambient: int, vectors: Iterable = ()):
        ech = _Echelon()
        for v in vectors:
            v = sparse(v)
            if v and not (0 <= min(v) and max(v) < ambient):
                raise ValueError("vector index out of range")
            ech.insert(v)
        self._set(ambient, [ech.rows[p] for p in sorted(ech.rows)])

    def _set(self, ambient, rows):
        self.ambient = ambient
        self._rows = tuple(rows)
        self._pivots = tuple(min(r) for r in rows)
        self._index = {p: i for i, p in enumerate(self._pivots)}

    @classmethod
    def _from_rref(cls, ambient: int, rows: Sequence[Vector]) -> "Subspace":
        s = cls.__new__(cls)
        s._set(ambient, sorted(rows, key=min))
        return s

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls._from_rref(n, [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls._from_rref(n, [])

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls._from_rref(n, [{i: 1} for i in sorted(set(indices))])

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def codim(self) -> int:
        return self.ambient - len(self._rows)

    @property
    def basis(self) -> list[Vector]:
        return [dict(r) for r in self._rows]

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def dense_basis(self) -> list[list]:
        return [[r.get(i, 0) for i in range(self.ambient)] for r in self._rows]

    def basis_matrix(self) -> ExactMatrix:
        """Matrix whose rows are the echelon basis."""
        return ExactMatrix.from_rows(self.dim, self.ambient, self._rows)

    def reduce(self, v: Mapping) -> Vector:
        """Normal form of ``v`` modulo the subspace (zero iff ``v`` lies in it)."""
        v = dict(v)
        for p in [k for k in v if k in self._index]:
            c = v[p]
            for k, x in self._rows[self._index[p]].items():
                s = v.get(k, 0) - c * x
                if s:
                    v[k] = s
                else:
                    del v[k]
        return v

    def __contains__(self, v) -> bool:
        return not self.reduce(sparse(v))

    def coordinates(self, v: Mapping) -> list:
        """Coefficients of ``v`` in the echelon basis; ``v`` must lie in the subspace."""
        if self.reduce(v):
            raise ValueError("vector not in subspace")
        return [v.get(p, 0) for p in self._pivots]

    def issubset(self, other: "Subspace") -> bool:
        return self.ambient == other.ambient and all(not other.reduce(r) for r in self._rows)

    __le__ = issubset

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace(self.ambient, list(self._rows) + list(other._rows))

    def image(self, op) -> "Subspace":
        return Subspace(self.ambient, [op.apply(r) for r in self._rows])

    def is_invariant(self, op) -> bool:
        return all(not self.reduce(op.apply(r)) for r in self._rows)

    def restrict(self, op) -> ExactMatrix:
        """Matrix of an operator preserving the subspace, in echelon-basis coordinates."""
        cols = []
        for r in self._rows:
            w = op.apply(r)
            if self.reduce(w):
                raise ValueError("subspace is not invariant under the operator")
            cols.append({i: w[p] for i, p in enumerate(self._pivots) if p in w})
        return ExactMatrix._trusted(self.dim, self.dim, cols)

    def annihilator(self) -> "Subspace":
        return annihilator(self)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient, tuple(frozenset(r.items()) for r in self._rows)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def rank_kernel(M: ExactMatrix) -> tuple[int, Subspace]:
    """Exact rank and right kernel of ``M``."""
    ech = _Echelon(reverse=True)
    for r in M.row_vectors():
        if r:
            ech.insert(r)
    rank = len(ech)
    entries = defaultdict(dict)  # free column -> {pivot: entry}
    for p, row in ech.rows.items():
        for k, c in row.items():
            if k != p:
                entries[k][p] = -c
    kernel = []
    for f in range(M.cols):
        if f in ech.rows:
            continue
        v = {f: 1}
        v.update(entries.get(f, {}))
        kernel.append(v)
    return rank, Subspace._from_rref(M.cols, kernel)


def rank(M: ExactMatrix, upper_bound: int | None = None) -> int:
    """Exact rank of ``M``.

    When ``upper_bound`` is a proven upper bound on the rank and the modular
    rank reaches it, that value is returned without rational elimination
    (the rank modulo a prime never exceeds the rank over Q).
    """
    if upper_bound is not None:
        r = rank_mod_p(M)
        if r is not None and r >= upper_bound:
            return upper_bound
    return _forward_rank(M.row_vectors())


def rank_mod_p(M: ExactMatrix, p: int = PRIME) -> int | None:
    """Rank of ``M`` reduced modulo ``p``; ``None`` if a denominator vanishes mod ``p``.

    Always a lower bound for the rational rank.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    A = np.zeros((M.rows, M.cols), dtype=np.int64)
    for j, col in enumerate(M.columns):
        for i, c in col.items():
            if isinstance(c, int):
                A[i, j] = c % p
            else:
                d = c.denominator % p
                if d == 0:
                    return None
                A[i, j] = (c.numerator % p) * pow(d, p - 2, p) % p
    return _rank_mod_p_dense(A, p)


def _rank_mod_p_dense(A: np.ndarray, p: int) -> int:
    A = A.copy()
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = r + 1 + np.nonzero(A[r + 1 :, c])[0]
        if below.size:
            f = A[below, c][:, None]
            A[below] = (A[below] - (f * A[r][None, :]) % p) % p
        r += 1
    return r


def bareiss_rank(M: ExactMatrix) -> int:
    """Rank by dense fraction-free (Bareiss) elimination over the integers.

    Deliberately independent of the sparse echelon code.
    """
    rows = M.to_dense()
    if not rows or not rows[0]:
        return 0
    den = 1
    for r in rows:
        for c in r:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
    A = [[int(c * den) for c in r] for r in rows]
    m, n = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            A[i] = [(A[r][c] * A[i][j] - a_ic * A[r][j]) // prev for j in range(n)]
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def determinant(M: ExactMatrix) -> Rational:
    """Exact determinant by Gaussian elimination over Q."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    A = [[Fraction(c) for c in r] for r in M.to_dense()]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return as_rational(det)


def inverse(M: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = M.rows
    if M.cols != n:
        raise ValueError("inverse of a non-square matrix")
    A = [[Fraction(c) for c in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.to_dense())]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        lead = A[c][c]
        A[c] = [x / lead for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return ExactMatrix.from_dense([[as_rational(x) for x in r[n:]] for r in A])


def annihilator(S: Subspace) -> Subspace:
    """Annihilator of ``S`` in the dual space under the standard pairing."""
    _, ker = rank_kernel(S.basis_matrix())
    assert S.dim + ker.dim == S.ambient
    return ker


def joint_kernel(ops: Sequence, space: Subspace | None = None, ambient: int | None = None) -> Subspace:
    """Vectors of ``space`` killed by every operator in ``ops``.

    Operators are anything with an ``apply(vector) -> vector`` method.
    The space is cut down one operator at a time, so putting operators with
    large kernels-complements (e.g. a Cartan subalgebra) first is cheapest.
    """
    if space is None:
        if ambient is None:
            raise ValueError("need a space or an ambient dimension")
        space = Subspace.full(ambient)
    for op in ops:
        if space.dim == 0:
            break
        images = [op.apply(r) for r in space._rows]
        if not any(images):
            continue
        N = max((max(w) for w in images if w), default=0) + 1
        _, ker = rank_kernel(ExactMatrix._trusted(N, space.dim, images))
        rows = space._rows
        vecs = []
        for k in ker._rows:
            v: dict = {}
            for i, c in k.items():
                axpy(v, c, rows[i])
            vecs.append(v)
        space = Subspace(space.ambient, vecs)
    return space


def spin(
    ops: Sequence,
    seeds: Iterable,
    ambient: int | None = None,
    grading: Callable[[int], Hashable] | None = None,
) -> Subspace:
    """Smallest subspace containing ``seeds`` and invariant under every operator.

    ``grading`` maps a coordinate to a block label.  When given, every seed
    and every operator image must be homogeneous (all coordinates in one
    block); elimination then runs block by block, which is what makes the
    large exterior-square closures tractable.
    """
    seeds = [sparse(s) for s in seeds]
    if ambient is None:
        if ops and hasattr(ops[0], "dim"):
            ambient = ops[0].dim
        elif ops and hasattr(ops[0], "cols"):
            ambient = ops[0].cols
        else:
            ambient = max((max(s) + 1 for s in seeds if s), default=0)

    blocks: dict = defaultdict(_Echelon)

    def label(v):
        if grading is None:
            return None
        it = iter(v)
        lab = grading(next(it))
        for k in it:
            if grading(k) != lab:
                raise ValueError("vector is not homogeneous for the grading")
        return lab

    queue = deque()

    def push(v):
        if not v:
            return
        row = blocks[label(v)].insert(v)
        if row is not None:
            queue.append(dict(row))

    for s in seeds:
        push(s)
    while queue:
        v = queue.popleft()
        for op in ops:
            push(op.apply(v))
    rows = [r for ech in blocks.values() for r in ech.rows.values()]
    return Subspace._from_rref(ambient, rows)


def exterior_power_matrix(M: ExactMatrix, k: int, derivation: bool) -> ExactMatrix:
    """Matrix of the induced action of ``M`` on the k-th exterior power.

    ``derivation=True`` extends ``M`` by the Leibniz rule (Lie algebra
    action); otherwise multiplicatively (group action, k x k minors).
    """
    n = M.cols
    basis = exterior_basis(n, k)
    cols = M.columns
    out = []
    for t in basis.tuples:
        img: dict = {}
        if derivation:
            for pos, j in enumerate(t):
                rest = t[:pos] + t[pos + 1 :]
                for i, c in cols[j].items():
                    s, tt = sort_sign(t[:pos] + (i,) + t[pos + 1 :]) if i not in rest else (0, ())
                    if s:
                        key = basis.index[tt]
                        v = img.get(key, 0) + s * c
                        if v:
                            img[key] = v
                        else:
                            img.pop(key, None)
        else:
            acc = {(): 1}
            for j in t:
                nxt: dict = {}
                for p, a in acc.items():
                    for i, c in cols[j].items():
                        s, tt = merge_sign(p, (i,))
                        if s:
                            v = nxt.get(tt, 0) + s * a * c
                            if v:
                                nxt[tt] = v
                            else:
                                nxt.pop(tt, None)
                acc = nxt
            img = {basis.index[tt]: c for tt, c in acc.items()}
        out.append(img)
    return ExactMatrix._trusted(len(basis), len(basis), out)
