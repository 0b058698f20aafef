from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import cup_membership_h1
from torelli_resonance.exact_linalg import ExactMatrix, Subspace, exterior_basis
from torelli_resonance.resonance_engine import (
    FULL,
    TRIVIAL,
    GroupAlgebraData,
    free_group_data,
    free_product_square_data,
    heisenberg_data,
    lemma_non_checks,
    mu_v0_kernel,
    random_algebra_data,
    random_point,
    resonance_membership,
    surface_data,
    torelli_data,
    two_form_data,
    verify_torelli_resonance,
)
from torelli_resonance.torelli_module import build_rep


def pair_columns(data):
    tuples = exterior_basis(data.n, 2).tuples
    return [{tuples[k]: c for k, c in col.items()} for col in data.delta.columns]


def test_data_validation():
    with pytest.raises(ValueError):
        GroupAlgebraData(3, 0, ExactMatrix.zeros(2, 0))
    with pytest.raises(ValueError):
        GroupAlgebraData(3, 2, ExactMatrix.zeros(3, 1))
    d = GroupAlgebraData.from_columns(3, [{(1, 0): 2}])
    assert d.delta.column(0) == {0: -2}


def test_membership_errors():
    d = free_group_data(3)
    with pytest.raises(ValueError):
        resonance_membership(d, [1, 0], 1)
    with pytest.raises(ValueError):
        resonance_membership(d, [1, 0, 0], 0)


def test_zero_point_convention():
    d = surface_data(2)
    m = resonance_membership(d, [0, 0, 0, 0], 1)
    assert m.h1_dim == 4 and m.member


@pytest.mark.parametrize("n", [2, 3, 5])
def test_free_group(n):
    rng = random.Random(n)
    d = free_group_data(n)
    for _ in range(10):
        m = resonance_membership(d, random_point(rng, n), n - 1)
        assert m.member and m.h1_dim == n - 1


def test_surface_genus_two():
    rng = random.Random(0)
    d = surface_data(2)
    for _ in range(20):
        a = random_point(rng, 4)
        m = resonance_membership(d, a, 1)
        assert m.member
        assert m.h1_dim == cup_membership_h1(4, pair_columns(d), a) == 2


def test_product_of_free_groups():
    d = free_product_square_data()
    x1, y1 = [1, 0, 0, 0], [0, 0, 1, 0]
    diag = [1, 0, 1, 0]
    assert not resonance_membership(d, diag, 1).member
    assert resonance_membership(d, diag, 1).h1_dim == 0
    # x1* lies in the F2 factor's resonance, where H^1(A, mu) is one-dimensional
    m = resonance_membership(d, x1, 1)
    assert m.member and m.h1_dim == 1
    assert not resonance_membership(d, x1, 2).member
    assert m.h1_dim == cup_membership_h1(4, pair_columns(d), x1)
    assert resonance_membership(d, y1, 1).h1_dim == 1


def test_heisenberg():
    rng = random.Random(1)
    d = heisenberg_data()
    for _ in range(20):
        assert resonance_membership(d, random_point(rng, 2), 1).member


def test_two_form_resonance_trivial():
    rng = random.Random(2)
    d = two_form_data()
    assert d.cup_kernel.dim == 1
    for _ in range(20):
        assert not resonance_membership(d, random_point(rng, 4), 1).member


def test_random_data_against_oracle():
    rng = random.Random(21)
    for _ in range(30):
        d = random_algebra_data(rng)
        cols = pair_columns(d)
        for _ in range(5):
            a = random_point(rng, d.n)
            assert resonance_membership(d, a, 1).h1_dim == cup_membership_h1(d.n, cols, a)


@given(
    st.integers(0, 10_000),
    st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(lambda c: c != 0),
    st.integers(1, 3),
)
def test_scale_invariance(seed, c, depth):
    rng = random.Random(seed)
    d = random_algebra_data(rng)
    a = random_point(rng, d.n)
    ca = [c * x for x in a]
    assert resonance_membership(d, a, depth) == resonance_membership(d, ca, depth)


def test_torelli_data():
    d3 = torelli_data(3)
    assert (d3.n, d3.m) == (14, 0)
    d4 = torelli_data(4)
    assert d4.n == 48
    assert d4.m == 1128 - 309 == 819
    with pytest.raises(ValueError):
        torelli_data(2)


def test_cup_kernel_of_torelli_data_is_W(rep4):
    assert torelli_data(4).cup_kernel == rep4.W


@pytest.mark.parametrize("g", [3, 4])
def test_unipotent_invariance_on_torelli_data(g):
    rep = build_rep(g)
    d = torelli_data(g)
    rng = random.Random(g)
    points = [random_point(rng, rep.dim) for _ in range(20)]
    points.append([rep.v0.get(i, 0) for i in range(rep.dim)])
    for a in points:
        base = resonance_membership(d, a, 1)
        vec = {i: x for i, x in enumerate(a) if x}
        for M in rep.unipotent_ops:
            img = M.apply(vec)
            moved = resonance_membership(d, [img.get(i, 0) for i in range(rep.dim)], 1)
            assert moved == base


def test_mu_v0_kernel(rep3, rep4):
    assert mu_v0_kernel(rep4) == Subspace(rep4.dim, [rep4.v0])
    assert mu_v0_kernel(rep3) == Subspace.full(rep3.dim)


@pytest.mark.parametrize("g", [3, 4])
def test_verdict_consistency(g):
    rep = verify_torelli_resonance(g, seed=5, samples=10)
    assert rep.verdict == (FULL if g == 3 else TRIVIAL)
    assert (rep.verdict == FULL) == (rep.evidence["rank_del"] == 0)
    assert rep.evidence["zero_h1_dim"] == rep.evidence["dim_V"]


def test_verify_rejects_low_genus():
    with pytest.raises(ValueError):
        verify_torelli_resonance(2)


@pytest.mark.parametrize("g", [3, 4])
def test_lemma_non_checks(g):
    r = lemma_non_checks(g)
    assert r["v0_wedge_u0_nonzero"] == (g >= 4)
    assert r["T1_e_matches"] and r["T1_e_nonzero"]
    assert not r["e_in_V0"]


def test_random_point_is_nonzero_and_small():
    rng = random.Random(0)
    for _ in range(100):
        p = random_point(rng, 3)
        assert any(p)
        assert all(abs(Fraction(x).numerator) <= 10 for x in p)
