from __future__ import annotations

import random
from math import comb

import pytest

from oracles import alexander_dims, chen_rank_free as chen_oracle
from torelli_resonance.alexander_infinitesimal import (
    GUARD_ENV,
    chen_rank_free,
    coker_dim_at,
    degree_block,
    finiteness_detect,
    graded_dims,
    infares_crosscheck,
    presentation_nnz,
    random_crosscheck,
    resource_guard,
    wk_membership,
)
from torelli_resonance.exact_linalg import ExactMatrix, _forward_rank, exterior_basis, rank
from torelli_resonance.resonance_engine import (
    GroupAlgebraData,
    free_group_data,
    free_product_square_data,
    heisenberg_data,
    random_algebra_data,
    random_point,
    surface_data,
    torelli_data,
    two_form_data,
)

# frozen from the oracle run in tests/oracles.alexander_dims (sympy presentation)
TWO_FORM_PROFILE = [1, 0]
TWO_FORM_VANISHING_DEGREE = 1
# frozen from graded_dims on the g = 4 Torelli data (b_0 = dim W)
TORELLI4_B0 = 309


def pair_columns(data):
    tuples = exterior_basis(data.n, 2).tuples
    return [{tuples[k]: c for k, c in col.items()} for col in data.delta.columns]


def test_free_group_profiles():
    assert graded_dims(free_group_data(2), 5).values == [1, 2, 3, 4, 5, 6]
    assert graded_dims(free_group_data(3), 3).values == [3, 8, 15, 24]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chen_formula_two_routes(n):
    prof = graded_dims(free_group_data(n), 3)
    for q, d in prof.dims:
        assert d == chen_rank_free(n, q + 2) == chen_oracle(n, q + 2)


@pytest.mark.parametrize(
    "data,qmax",
    [(surface_data(2), 3), (free_product_square_data(), 3), (heisenberg_data(), 3), (two_form_data(), 3)],
    ids=lambda x: getattr(x, "label", str(x)),
)
def test_profiles_against_polynomial_oracle(data, qmax):
    assert graded_dims(data, qmax).values == alexander_dims(data.n, pair_columns(data), qmax)


def test_random_profiles_against_polynomial_oracle():
    rng = random.Random(12)
    for _ in range(6):
        d = random_algebra_data(rng, nmax=4, mmax=4)
        assert graded_dims(d, 2).values == alexander_dims(d.n, pair_columns(d), 2)


def test_two_form_vanishing_degree_frozen():
    prof = graded_dims(two_form_data(), 4)
    assert prof.values[:2] == TWO_FORM_PROFILE
    assert prof.vanishing_degree == TWO_FORM_VANISHING_DEGREE
    assert prof.finite
    assert prof.values[2:] == [0, 0, 0]
    res = finiteness_detect(two_form_data(), 4)
    assert res["finite"] is True and res["vanishing_degree"] == 1


def test_free_group_never_vanishes():
    prof = graded_dims(free_group_data(2), 10)
    assert all(d > 0 for d in prof.values)
    assert finiteness_detect(free_group_data(2), 10)["finite"] == "unknown"


def test_base_case_b0():
    rng = random.Random(3)
    for _ in range(20):
        d = random_algebra_data(rng)
        assert graded_dims(d, 0).values == [comb(d.n, 2) - rank(d.delta)]


def test_monotone_truncation():
    rng = random.Random(4)
    for _ in range(5):
        d = random_algebra_data(rng, nmax=4)
        short, long = graded_dims(d, 2), graded_dims(d, 4)
        assert long.dims[:3] == short.dims


def test_zero_propagation_direct():
    # compute every degree directly (no shortcut) and check zeros persist
    rng = random.Random(5)
    checked = 0
    for _ in range(15):
        d = random_algebra_data(rng, nmax=4)
        dims = []
        for q in range(4):
            nrows, cols = degree_block(d, q)
            dims.append(nrows - _forward_rank(cols))
        for a, b in zip(dims, dims[1:]):
            if a == 0:
                assert b == 0
                checked += 1
    assert checked > 0


def test_graded_dims_errors():
    with pytest.raises(ValueError):
        graded_dims(free_group_data(2), -1)
    with pytest.raises(ValueError):
        finiteness_detect(free_group_data(2), 0)


def test_resource_guard_truncates():
    prof = graded_dims(free_group_data(4), 5, guard=presentation_nnz(free_group_data(4), 2))
    assert prof.truncated_at == 3
    assert prof.values == [6, 20, 45]
    assert not prof.finite


def test_resource_guard_env(monkeypatch):
    monkeypatch.setenv(GUARD_ENV, "123")
    assert resource_guard() == 123
    monkeypatch.delenv(GUARD_ENV)
    assert resource_guard() == 2_000_000


def test_torelli_b0():
    prof = graded_dims(torelli_data(4), 0)
    assert prof.values == [TORELLI4_B0]
    assert graded_dims(torelli_data(3), 0).values == [91]


def test_wk_examples():
    rng = random.Random(6)
    # del surjective onto wedge^2: coker is zero everywhere
    n = 4
    N = comb(n, 2)
    full = GroupAlgebraData(n, N, ExactMatrix.identity(N))
    F2 = free_group_data(2)
    S2 = surface_data(2)
    for _ in range(10):
        z = random_point(rng, n)
        assert not wk_membership(full, z, 1)
        assert wk_membership(F2, random_point(rng, 2), 1)
        assert wk_membership(S2, z, 1)
    with pytest.raises(ValueError):
        coker_dim_at(F2, [1, 2, 3])


def test_crosscheck_random_suite():
    res = random_crosscheck(20, seed=1, points=20, kmax=3)
    assert res["cases"] == 1200
    assert res["discrepancies"] == []


def test_crosscheck_product_example():
    d = free_product_square_data()
    res = infares_crosscheck(d, [[1, 0, 0, 0], [0, 0, 1, 0], [1, 0, 1, 0]], 2)
    assert res["discrepancies"] == []
    assert wk_membership(d, [1, 0, 0, 0], 1)
    assert not wk_membership(d, [1, 0, 0, 0], 2)


def test_crosscheck_rejects_zero():
    with pytest.raises(ValueError):
        infares_crosscheck(free_group_data(2), [[0, 0]], 1)
