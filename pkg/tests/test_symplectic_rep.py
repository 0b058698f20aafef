from __future__ import annotations

import random
from math import comb

import pytest

from torelli_resonance.exact_linalg import ExactMatrix, Multivector, exterior_basis, wedge
from torelli_resonance.symplectic_rep import (
    GROUP,
    LIE,
    RepOperator,
    SymplecticSpace,
    Weight,
    cartan,
    exp_nilpotent,
    is_infinitesimally_symplectic,
    is_symplectic,
    negative_root_vectors,
    positive_root_vectors,
    positive_roots,
    sp_generators,
    unipotents,
    weight_of,
    weight_spaces,
)


def root_op(g, alpha):
    return next(op for op in sp_generators(g) if op.root == Weight(alpha))


def random_mv(rng, dim, degree, terms=3):
    tuples = exterior_basis(dim, degree).tuples
    return Multivector(dim, degree, {rng.choice(tuples): rng.randint(-4, 4) for _ in range(terms)})


def test_symplectic_form():
    H = SymplecticSpace(3)
    assert H.form(H.a(1), H.b(1)) == 1
    assert H.form(H.b(1), H.a(1)) == -1
    assert H.form(H.a(1), H.b(2)) == 0
    assert H.form(H.a(1), H.a(2)) == 0
    assert H.labels == ["a1", "a2", "a3", "b1", "b2", "b3"]


@pytest.mark.parametrize("g", [2, 3, 4])
def test_generator_count(g):
    ops = sp_generators(g)
    assert len(ops) == g + 2 * g * g
    assert len(cartan(ops)) == g
    assert len(positive_root_vectors(ops)) == len(negative_root_vectors(ops)) == g * g
    assert len(positive_roots(g)) == g * g


def test_sp_generators_genus_check():
    with pytest.raises(ValueError):
        sp_generators(1)


def test_x_2t1_normalization():
    H = SymplecticSpace(2)
    X = root_op(2, [2, 0])
    assert X.apply({H.b(1): 1}) == {H.a(1): 1}
    for i in (H.a(1), H.a(2), H.b(2)):
        assert X.apply({i: 1}) == {}


def test_basis_weights():
    ops = sp_generators(3)
    h = cartan(ops)
    H = SymplecticSpace(3)
    assert weight_of({H.a(1): 1}, h) == Weight([1, 0, 0])
    assert weight_of({H.b(1): 1}, h) == Weight([-1, 0, 0])
    assert weight_of(H.wedge("a1", "a2", "a3"), h) == Weight.fundamental(3, 3)
    assert weight_of(H.wedge("a1", "b1", "a2"), h) == Weight([0, 1, 0])


def test_weight_of_errors():
    h = cartan(sp_generators(2))
    with pytest.raises(ValueError):
        weight_of({}, h)
    with pytest.raises(ValueError):
        weight_of({0: 1, 2: 1}, h)
    with pytest.raises(ValueError):
        weight_of(Multivector(4, 1), h)


def test_weight_helpers():
    assert Weight.fundamental(2, 4) == Weight([1, 1, 0, 0])
    assert str(Weight([1, 1, 1])) == "t1+t2+t3"
    assert str(Weight([2, 2, 0, 0])) == "2t1+2t2"
    assert str(Weight([0, -1])) == "-t2"
    assert str(Weight.zero(3)) == "0"


@pytest.mark.parametrize("g", [2, 3, 4])
def test_bracket_relations(g):
    ops = sp_generators(g)
    hs = cartan(ops)
    for i, h in enumerate(hs):
        for h2 in hs:
            assert not h.bracket(h2).matrix.nnz
        for X in ops:
            if X.root is None:
                continue
            e = [0] * g
            e[i] = 1
            assert h.bracket(X).matrix == X.matrix * X.root(e)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_generators_infinitesimally_symplectic(g):
    H = SymplecticSpace(g)
    for op in sp_generators(g):
        assert op.kind == LIE
        assert is_infinitesimally_symplectic(op, H)
        assert not op.act(H.omega())


def test_non_symplectic_operator_detected():
    H = SymplecticSpace(2)
    op = RepOperator(LIE, ExactMatrix.from_dense([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]))
    assert not is_infinitesimally_symplectic(op, H)


def test_leibniz_random():
    rng = random.Random(3)
    g = 3
    ops = sp_generators(g)
    for _ in range(100):
        X = rng.choice(ops)
        u, v = random_mv(rng, 2 * g, rng.randint(1, 2)), random_mv(rng, 2 * g, rng.randint(1, 2))
        assert X.act(wedge(u, v)) == wedge(X.act(u), v) + wedge(u, X.act(v))


def test_group_action_multiplicative():
    rng = random.Random(4)
    for M in unipotents(3):
        u, v = random_mv(rng, 6, 1), random_mv(rng, 6, 2)
        assert M.act(wedge(u, v)) == wedge(M.act(u), M.act(v))


@pytest.mark.parametrize("g", [2, 3])
def test_weight_space_dimensions(g):
    n = comb(2 * g, 3)
    hs = [h.lift(3) for h in cartan(sp_generators(g))]
    spaces = weight_spaces(hs)
    assert sum(S.dim for S in spaces.values()) == n
    for w, S in spaces.items():
        for v in S.basis:
            assert weight_of(v, hs) == w


def test_unipotents():
    g = 2
    H = SymplecticSpace(g)
    Us = unipotents(g)
    assert len(Us) == 2 * g * g
    for U in Us:
        assert U.kind == GROUP
        assert U.matrix.is_integral()
        assert is_symplectic(U, H)
    U = next(u for u in Us if u.root == Weight([2, 0]))
    assert U.apply({H.b(1): 1}) == {H.a(1): 1, H.b(1): 1}
    for i in (H.a(1), H.a(2), H.b(2)):
        assert U.apply({i: 1}) == {i: 1}
    Um = next(u for u in Us if u.root == Weight([-2, 0]))
    assert (U @ Um).matrix != ExactMatrix.identity(2 * g)
    assert (U @ U.inverse()).matrix == ExactMatrix.identity(2 * g)


def test_exp_nilpotent_order_three():
    # X^2 != 0 here, so the X^2/2 term matters
    X = ExactMatrix.from_dense([[0, 2, 0], [0, 0, 2], [0, 0, 0]])
    E = exp_nilpotent(X)
    assert E == ExactMatrix.from_dense([[1, 2, 2], [0, 1, 2], [0, 0, 1]])
