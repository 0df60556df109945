from __future__ import annotations

import time
from math import comb

import pytest

from solvco.cohomology import (BettiMismatch, DimensionCapError, betti_table, class_coordinates,
                               cohomology_basis, ddbar_defect, de_rham, hodge_comparison,
                               hodge_numbers, hodge_table, verify_representatives)
from solvco.lattice import mu_weights
from solvco.model import ModelError, generalized_nakamura, product_model

TABLES = {
    "nakamura3": ([["1"], ["-1"]], [1, 2, 5, 8, 5, 2, 1]),
    "nakamura4": ([["1"], ["-1"], ["0"]], [1, 4, 10, 20, 26, 20, 10, 4, 1]),
}
PRODUCT_1_1 = [1, 4, 10, 20, 26, 20, 10, 4, 1]


@pytest.mark.parametrize("key", sorted(TABLES))
def test_nakamura_betti_two_routes(key):
    weights, expected = TABLES[key]
    M = generalized_nakamura(weights)
    t0 = time.perf_counter()
    full = betti_table(M, method="full", cross_check=False)
    assert time.perf_counter() - t0 < 60
    assert full == expected
    assert betti_table(M, method="basis") == expected
    assert betti_table(M, method="sector") == expected


def test_product_betti_two_routes():
    M = product_model(1, 1)
    t0 = time.perf_counter()
    assert betti_table(M, method="full") == PRODUCT_1_1
    assert time.perf_counter() - t0 < 60
    assert betti_table(M, method="sector") == PRODUCT_1_1


def test_parallel_does_not_change_result():
    M = product_model(1, 1)
    assert betti_table(M, parallel=2) == betti_table(M)


def test_unknown_method():
    with pytest.raises(ValueError):
        betti_table(product_model(1, 1), method="nope")


def models():
    yield generalized_nakamura([["1"], ["-1"]])
    yield generalized_nakamura([["1", "0"], ["0", "1"], ["-1", "-1"]])
    yield generalized_nakamura([["1"], ["-1"], ["1"], ["-1"]])
    yield generalized_nakamura([["1"], ["-1"], ["0"]])
    yield product_model(1, 1)
    yield product_model(1, 2)
    yield product_model(2, 1)


@pytest.mark.parametrize("model", list(models()), ids=lambda m: str(m.describe()))
def test_poincare_and_euler(model):
    b = betti_table(model, method="sector")
    assert b == list(reversed(b))
    assert sum((-1) ** k * x for k, x in enumerate(b)) == 0
    assert b[0] == 1 and b[-1] == 1


def test_rank2_nakamura_betti():
    M = generalized_nakamura([["1", "0"], ["0", "1"], ["-1", "-1"]])
    assert betti_table(M) == [1, 2, 1, 8, 16, 8, 1, 2, 1]


def test_weight_permutation_invariance():
    base = [["1", "0"], ["0", "1"], ["-1", "-1"]]
    ref = betti_table(generalized_nakamura(base), method="sector")
    for perm in ([1, 2, 0], [2, 0, 1], [0, 2, 1]):
        assert betti_table(generalized_nakamura([base[i] for i in perm]), method="sector") == ref


def test_kvec_invariance():
    ref = betti_table(product_model(1, 1))
    for kvec in ([2, 3], [-1, 5], [7, -2]):
        assert mu_weights(kvec)["trivial"]
        assert betti_table(product_model(1, 1, kvec)) == ref


def test_listed_basis_represents_cohomology():
    for M in (generalized_nakamura([["1"], ["-1"]]), product_model(1, 1)):
        for k in range(M.real_dim + 1):
            elems = cohomology_basis(M, k)
            assert verify_representatives(M, k, elems)


def test_de_rham_dimension_and_closed_reps():
    M = product_model(1, 1)
    for k in (1, 2, 3):
        res = de_rham(M, k)
        assert res.dimension == PRODUCT_1_1[k]
        assert all(not M.d(r) for r in res.representatives)


def test_class_coordinates():
    M = product_model(1, 1)
    basis = cohomology_basis(M, 2)
    form = M.mono(["psi1", "psi2"], 3, M.F_char()) + M.mono(["phi1", "phib1"])
    coords = class_coordinates(M, form, basis)
    assert sum(1 for c in coords if c) == 2
    with pytest.raises(ArithmeticError):
        class_coordinates(M, M.mono(["psi1", "psi2"]), basis)


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("SOLVCO_MAX_DEGREE_DIM", "10")
    with pytest.raises(DimensionCapError):
        betti_table(product_model(1, 1))
    monkeypatch.setenv("SOLVCO_MAX_DEGREE_DIM", "abc")
    with pytest.raises(DimensionCapError):
        betti_table(product_model(1, 1))


def test_betti_mismatch_is_arithmetic_error():
    assert issubclass(BettiMismatch, ArithmeticError)


# --- Dolbeault ------------------------------------------------------------------------

def test_hodge_edges_match_binomials():
    H = hodge_table(product_model(1, 1))
    for p in range(5):
        assert H[p][0] == comb(4, p)
        assert H[0][p] == comb(4, p)
    assert H[3][1] == 16
    assert H[2][2] == 36


def test_hodge_interior_reported_with_printed_values():
    rep = hodge_comparison(product_model(1, 1))
    by = {(e["p"], e["q"]): e for e in rep["entries"]}
    # computed values (frozen from the delbar elimination) alongside the printed ones
    assert (by[(1, 1)]["computed"], by[(1, 1)]["printed"]) == (16, 8)
    assert (by[(2, 1)]["computed"], by[(2, 1)]["printed"]) == (24, 12)
    assert (by[(1, 2)]["computed"], by[(1, 2)]["printed"]) == (24, 12)
    for key in ((1, 1), (2, 1), (1, 2)):
        assert by[key]["discrepancy"]
    for key in ((0, 0), (1, 0), (2, 0), (3, 1), (2, 2)):
        assert not by[key]["discrepancy"]
    assert rep["any_discrepancy"]


def test_hodge_serre_duality_and_frolicher():
    M = product_model(1, 1)
    h = hodge_numbers(M)
    b = betti_table(M, method="sector")
    N = M.complex_dim
    for (p, q), v in h.items():
        assert v == h[(N - p, N - q)]
    for k in range(2 * N + 1):
        assert sum(v for (p, q), v in h.items() if p + q == k) >= b[k]


def test_hodge_requires_product():
    with pytest.raises(ModelError):
        hodge_numbers(generalized_nakamura([["1"], ["-1"]]))


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1)])
def test_ddbar_lemma_fails_in_degree_one(n, m):
    res = ddbar_defect(product_model(n, m), 1)
    assert res.sum_hodge == 4 * n + 4 * m
    assert res.betti == 4 * n
    assert res.violated
