from __future__ import annotations

import random
from math import comb

import pytest

from oracles import weyl_dim_sp
from torelli_resonance.exact_linalg import Multivector, Subspace, exterior_basis, spin
from torelli_resonance.symplectic_rep import SymplecticSpace, Weight, unipotents, weight_of, weight_spaces
from torelli_resonance.torelli_module import (
    build_rep,
    build_W,
    contraction,
    contraction_matrix,
    distinguished_vectors,
    maximal_vectors,
    nilpotency_index,
    wedge_omega,
)


def random_trivector(rng, g, terms=5):
    tuples = exterior_basis(2 * g, 3).tuples
    return Multivector(2 * g, 3, {rng.choice(tuples): rng.randint(-5, 5) for _ in range(terms)})


def test_contraction_examples():
    H = SymplecticSpace(3)
    assert contraction(H.wedge("a1", "b1", "a2"), H) == H.wedge("a2")
    assert not contraction(H.wedge("a1", "a2", "a3"), H)
    with pytest.raises(ValueError):
        contraction(H.wedge("a1", "a2"), H)


@pytest.mark.parametrize("g", [3, 4, 5])
def test_contraction_of_wedge_omega(g):
    H = SymplecticSpace(g)
    for x in range(H.dim):
        assert contraction(wedge_omega({x: 1}, H), H) == Multivector(H.dim, 1, {(x,): g - 1})


@pytest.mark.parametrize("g,dim", [(3, 14), (4, 48), (5, 110)])
def test_dim_V(g, dim):
    rep = build_rep(g)
    assert rep.dim == dim == comb(2 * g, 3) - 2 * g


@pytest.mark.parametrize("g", [3, 4])
def test_direct_sum_splitting(g):
    rep = build_rep(g)
    H = rep.H
    Hw = Subspace(len(rep.tri), [wedge_omega({x: 1}, H).to_vector() for x in range(H.dim)])
    assert Hw.dim == 2 * g
    total = rep.lprime + Hw
    assert total.dim == len(rep.tri) == rep.lprime.dim + Hw.dim


def test_build_rep_genus_check():
    with pytest.raises(ValueError):
        build_rep(2)


def test_contraction_equivariance_random():
    rng = random.Random(17)
    g = 3
    H = SymplecticSpace(g)
    Us = unipotents(g)
    for _ in range(100):
        w = random_trivector(rng, g)
        for M in Us:
            assert contraction(M.act(w), H) == M.act(contraction(w, H))


def test_contraction_matrix_kernel(rep3):
    C = contraction_matrix(rep3.H)
    assert all(not C.apply(v) for v in rep3.lprime.basis)


@pytest.mark.parametrize("g", [3, 4])
def test_operators_on_V_match_inclusion(g):
    rep = build_rep(g)
    for op_H, op_V in zip(rep.sp_ops + rep.unipotents_H, rep.generators + rep.unipotent_ops):
        lifted = op_H.lift(3)
        for i in range(rep.dim):
            assert rep.embed(op_V.apply({i: 1})) == lifted.apply(rep.embed({i: 1}))


def test_coords_roundtrip(rep3):
    v = rep3.v0
    assert rep3.coords(rep3.embed(v)) == v
    with pytest.raises(ValueError):
        rep3.coords(wedge_omega({0: 1}, rep3.H).to_vector())


@pytest.mark.parametrize("g", [3, 4])
def test_distinguished_vectors(g):
    rep = build_rep(g)
    d = distinguished_vectors(rep)
    assert all(d.values())
    assert weight_of(d["v0"], rep.cartan) == Weight.fundamental(3, g)
    h2 = [h.lift(2) for h in rep.cartan]
    assert weight_of(d["u0"], h2) == Weight.fundamental(2, g) * 2
    assert weight_of(d["z0"], h2) == Weight.zero(g)
    for X in rep.positive:
        assert not X.apply(d["v0"])
        assert not X.lift(2).apply(d["u0"])
    for X in rep.wedge2_generators:
        assert not X.apply(d["z0"])


@pytest.mark.parametrize("g", [3, 4])
def test_maximal_vectors_of_V(g):
    rep = build_rep(g)
    M = maximal_vectors(rep.generators, Subspace.full(rep.dim))
    assert M == Subspace(rep.dim, [rep.v0])


def test_maximal_vectors_of_wedge2_V_genus3(rep3):
    N = len(rep3.pair)
    M = maximal_vectors(rep3.wedge2_generators, Subspace.full(N))
    assert M.dim == 2
    assert M == Subspace(N, [rep3.u0, rep3.z0])
    Z = Subspace(N, [rep3.z0])
    assert maximal_vectors(rep3.wedge2_generators, Z) == Z


def test_maximal_vectors_requires_invariance(rep3):
    with pytest.raises(ValueError):
        maximal_vectors(rep3.generators, Subspace(rep3.dim, [rep3.vbar0]))


@pytest.mark.parametrize("g,dim_w", [(3, 91), (4, 309)])
def test_W(g, dim_w):
    rep = build_rep(g)
    W = build_W(rep)
    assert W.dim == dim_w
    assert rep.highest.dim == dim_w - 1 == weyl_dim_sp(Weight.fundamental(2, g) * 2)
    assert rep.z0 not in rep.highest
    for op in rep.wedge2_generators:
        assert W.is_invariant(op)


@pytest.mark.parametrize("g", [3, 4])
def test_positive_root_vectors_nilpotent_on_W(g):
    rep = build_rep(g)
    W = rep.W
    bound = len({rep.pair_weight(k) for v in W.basis for k in v})
    for X in rep.positive:
        r = nilpotency_index(X.lift(2), W, bound)
        assert 1 <= r <= bound


def test_nilpotency_index_rejects_non_nilpotent(rep3):
    h = rep3.cartan[0]
    with pytest.raises(ValueError):
        nilpotency_index(h, Subspace(rep3.dim, [rep3.v0]), 5)


@pytest.mark.parametrize("g", [3, 4])
def test_weight_shift(g):
    rep = build_rep(g)
    lam3 = Weight.fundamental(3, g)
    h2 = [h.lift(2) for h in rep.cartan]
    spaces = weight_spaces(rep.cartan)
    assert sum(S.dim for S in spaces.values()) == rep.dim
    for lam, S in spaces.items():
        for v in S.basis:
            w = rep.wedge_vectors(rep.v0, v)
            if w:
                assert weight_of(w, h2) == lam3 + lam


def test_graded_spin_matches_plain_spin(rep3):
    plain = spin(rep3.wedge2_generators, [rep3.u0], ambient=len(rep3.pair))
    assert plain == rep3.highest
    assert plain.dim == 90
