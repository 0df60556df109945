from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvco.algebra import Gaussian, QuadNumber
from solvco.elimination import rank, rank_zi, sparse_rank
from solvco.lattice import (PAIRED4_M, SPLIT3_D, SPLIT3_M, SPLIT3_P, LatticeError, SemidirectGroup,
                            char_poly, det_int, diagonalize_2x2, in_special_linear, mu_weights,
                            poly_str, quad_matrix, trace_family_matrix, verify_conjugation,
                            verify_splitting_example, word_matrix)
from solvco.reports import paired4_report, trace_family_report

from oracles import fraction_rank, leibniz_char_poly, leibniz_det


@pytest.mark.parametrize("n", range(3, 11))
def test_trace_family_char_poly(n):
    M = trace_family_matrix(n)
    assert char_poly(M) == leibniz_char_poly(M) == [1, -n, 1]
    assert det_int(M) == leibniz_det(M) == 1
    P, D = diagonalize_2x2(M)
    assert verify_conjugation(P, M, D)
    assert D[0][0] * D[1][1] == QuadNumber(1, 0, D[0][0].d)
    assert D[0][0] + D[1][1] == QuadNumber(n, 0, D[0][0].d)


def test_trace_family_report():
    rep = trace_family_report()
    assert rep["all_pass"]
    assert [r["n"] for r in rep["rows"]] == list(range(3, 11))
    assert rep["rows"][0]["eigenvalues"] == [str(QuadNumber.parse("(3+sqrt(5))/2")),
                                              str(QuadNumber.parse("(3-sqrt(5))/2"))]


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 50))
def test_diagonalize_trace_family_random(n):
    M = trace_family_matrix(n)
    P, D = diagonalize_2x2(M)
    assert verify_conjugation(P, M, D)


def test_diagonalize_rejects():
    with pytest.raises(LatticeError):
        diagonalize_2x2([[1, 1], [0, 1]])        # trace 2
    with pytest.raises(LatticeError):
        diagonalize_2x2([[2, 1], [1, 2]])        # det 3
    with pytest.raises(LatticeError):
        diagonalize_2x2([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_split3_matrix():
    assert char_poly(SPLIT3_M) == leibniz_char_poly(SPLIT3_M) == [1, -4, 4, -1]
    assert poly_str(char_poly(SPLIT3_M)) == "x^3-4x^2+4x-1"
    assert det_int(SPLIT3_M) == leibniz_det(SPLIT3_M) == 1
    assert verify_conjugation(quad_matrix(SPLIT3_P), SPLIT3_M, quad_matrix(SPLIT3_D))


def test_conjugation_detects_wrong_diagonal():
    D = [row[:] for row in SPLIT3_D]
    D[2][2] = "2"
    assert not verify_conjugation(quad_matrix(SPLIT3_P), SPLIT3_M, quad_matrix(D))


def test_paired4_matrix():
    cp = char_poly(PAIRED4_M)
    assert cp == leibniz_char_poly(PAIRED4_M) == [1, -8, 18, -8, 1]     # (x^2 - 4x + 1)^2
    assert det_int(PAIRED4_M) == leibniz_det(PAIRED4_M) == 1
    assert in_special_linear(PAIRED4_M)
    rep = paired4_report()
    assert rep["char_poly_matches"] and rep["diagonalizable"]
    assert all(v["eigenspace_dim"] == 2 for v in rep["eigenspaces"].values())


def test_splitting_generators():
    res = verify_splitting_example()
    gens = res["generators"]
    assert set(gens) == {f"{x}{k}_prime" for x in "gh" for k in range(4)}
    assert all(g["matches"] for g in gens.values()), {k: v for k, v in gens.items() if not v["matches"]}
    assert res["all_match"]
    d = 5
    want = [QuadNumber.parse("(-sqrt(5)+5)/10", d), QuadNumber.parse("(sqrt(5)+5)/10", d),
            QuadNumber(0, 0, d)]
    assert gens["g1_prime"]["translation"] == [str(x) for x in want]


def test_word_matrix_unimodular():
    W = word_matrix()
    assert det_int(W) == leibniz_det(W)
    assert verify_splitting_example()["unimodular"] == (abs(det_int(W)) == 1)


# --- group law ---------------------------------------------------------------------

GROUP = SemidirectGroup(["(sqrt(5)+3)/2", "(-sqrt(5)+3)/2", "1"])
coord = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


def elems():
    return st.builds(
        lambda w, t, zs: GROUP.element(w, t, [(QuadNumber(a, b, 5), QuadNumber(c, e, 5))
                                               for a, b, c, e in zs]),
        st.integers(-2, 2), st.integers(-2, 2), st.lists(coord, min_size=3, max_size=3))


@settings(max_examples=100, deadline=None)
@given(elems(), elems(), elems())
def test_group_associative(a, b, c):
    assert GROUP.compose(GROUP.compose(a, b), c) == GROUP.compose(a, GROUP.compose(b, c))


@settings(max_examples=100, deadline=None)
@given(elems())
def test_group_inverse(a):
    assert GROUP.compose(a, GROUP.inverse(a)) == GROUP.identity()
    assert GROUP.compose(GROUP.inverse(a), a) == GROUP.identity()


@settings(max_examples=50, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_rho_homomorphism(a, b):
    assert [x * y for x, y in zip(GROUP.rho(a), GROUP.rho(b))] == GROUP.rho(a + b)


def test_group_rejects():
    with pytest.raises(LatticeError):
        GROUP.element(Fraction(1, 2))
    with pytest.raises(LatticeError):
        SemidirectGroup(["2", "1/2", "1"])


# --- lattice parameters ----------------------------------------------------------------

def test_mu_weights():
    rep = mu_weights([1, 2, -3])
    assert rep["trivial"]
    assert rep["exponent_over_2pi"] == [1, -2, -3]
    with pytest.raises(LatticeError):
        mu_weights([1, 0])
    with pytest.raises(LatticeError):
        mu_weights([1, 1.5])
    with pytest.raises(LatticeError):
        mu_weights([])


# --- dense rank kernels against an independent elimination --------------------------

small = st.integers(-3, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_kernels_agree_with_fraction_rank(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    want = fraction_rank(rows)
    assert rank(rows) == want
    assert rank_zi(rows) == want
    assert sparse_rank([{j: Gaussian(x) for j, x in enumerate(row) if x} for row in rows]) == want


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_gaussian_rank_kernels_agree(r, c, data):
    g = st.builds(Gaussian, st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
    rows = [[data.draw(g) for _ in range(c)] for _ in range(r)]
    # realification doubles the rank over Q
    real = []
    for row in rows:
        real.append([x for z in row for x in (z.re, -z.im)])
        real.append([x for z in row for x in (z.im, z.re)])
    want = fraction_rank(real)
    assert 2 * rank(rows) == want
    assert 2 * rank_zi(rows) == want
