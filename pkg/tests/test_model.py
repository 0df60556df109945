from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvco.algebra import Coeff, Form, Gaussian, Weight
from solvco.model import (ModelError, StructureEquations, admissible_basis, check_solvability,
                          delbar, dolbeault_basis, generalized_nakamura, product_model)

GN_MODELS = {
    "rank1_pair": [["1"], ["-1"]],
    "rank1_pair_plus_zero": [["1"], ["-1"], ["0"]],
    "rank2_triple": [["1", "0"], ["0", "1"], ["-1", "-1"]],
    "two_pairs": [["1"], ["-1"], ["1"], ["-1"]],
}
PRODUCTS = [(1, 1), (1, 2), (2, 1)]


def all_models():
    for w in GN_MODELS.values():
        yield generalized_nakamura(w)
    for n, m in PRODUCTS:
        yield product_model(n, m)


def test_nakamura_structure_equations():
    M = generalized_nakamura([["1"], ["-1"]])
    lam = Coeff.symbol("lam1")
    base = M.gen("phi0") + M.gen("phib0")
    assert M.d(M.gen("phi0")) == Form.zero(M.gens)
    assert M.d(M.gen("phi1")) == base.wedge(M.gen("phi1")) * (lam * Fraction(-1, 2))
    assert M.d(M.gen("phi2")) == base.wedge(M.gen("phi2")) * (lam * Fraction(1, 2))


def test_nakamura_rejects_bad_weights():
    with pytest.raises(ModelError):
        generalized_nakamura([["1"], ["1"]])
    with pytest.raises(ModelError):
        generalized_nakamura([["1", "0"], ["-1"]])
    with pytest.raises(ValueError):
        generalized_nakamura([["1/0"], ["-1"]])


def test_product_rejects_bad_input():
    with pytest.raises(ModelError):
        product_model(0, 1)
    with pytest.raises(ModelError):
        product_model(1, 1, kvec=[1, 0])
    with pytest.raises(ModelError):
        product_model(1, 1, kvec=[1])


@pytest.mark.parametrize("model", list(all_models()), ids=lambda m: str(m.describe()))
def test_d_squared_zero_on_every_monomial(model):
    gens = model.gens
    for mask in range(1 << len(gens)):
        f = Form.from_mask(gens, mask)
        assert not model.d(model.d(f)), gens.label(mask)


@pytest.mark.parametrize("model", list(all_models()), ids=lambda m: str(m.describe()))
def test_fast_differential_matches_leibniz_extension(model):
    slow = StructureEquations(model.gens, model.dgen)
    gens = model.gens
    for mask in range(1 << len(gens)):
        assert model.d_monomial(mask) == slow.d_monomial(mask)


def test_product_characters_make_generators_closed():
    M = product_model(1, 1)
    for i, name in enumerate(M.gens.names):
        f = Form.monomial(M.gens, [name], 1, M.gen_char[i])
        assert not M.d(f), name


def test_F_times_psi12_is_closed():
    M = product_model(1, 1)
    assert not M.d(M.mono(["psi1", "psi2"], 1, M.F_char()))
    assert M.d(M.mono(["psi1", "psi2"]))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, (1 << 8) - 1), st.integers(0, (1 << 8) - 1))
def test_leibniz_rule_product(m1, m2):
    M = product_model(1, 1)
    a = Form.from_mask(M.gens, m1, Gaussian(1, 1))
    b = Form.from_mask(M.gens, m2, 2, M.F_char())
    p = m1.bit_count()
    lhs = M.d(a.wedge(b))
    rhs = M.d(a).wedge(b) + a.wedge(M.d(b)) * (-1 if p % 2 else 1)
    assert lhs == rhs


def test_admissible_basis_counts():
    M = generalized_nakamura([["1"], ["-1"]])
    assert [len(admissible_basis(M, k)) for k in range(7)] == [1, 2, 5, 8, 5, 2, 1]
    with pytest.raises(ModelError):
        admissible_basis(M, 7)


def test_dolbeault_basis_counts_and_restriction():
    M = product_model(1, 1)
    assert len(dolbeault_basis(M, 1, 1)) == 16
    assert len(dolbeault_basis(M, 0, 2)) == 6
    with pytest.raises(ModelError):
        dolbeault_basis(generalized_nakamura([["1"], ["-1"]]), 0, 0)


def test_delbar_requires_pure_bidegree():
    M = product_model(1, 1)
    with pytest.raises(ModelError):
        delbar(M, M.gen("phi1") + M.gen("phib1"))
    assert not delbar(M, M.gen("phi1"))


@pytest.mark.parametrize("model", list(all_models()), ids=lambda m: str(m.describe()))
def test_solvable_not_nilpotent(model):
    rep = check_solvability(model)
    assert rep["solvable"]
    assert not rep["nilpotent"]
    assert rep["dimension"] == model.real_dim


def test_product_is_two_step_solvable():
    assert check_solvability(product_model(1, 1))["solvable_steps"] == 2


def test_weight_permutation_gives_isomorphic_model():
    a = generalized_nakamura([["1", "0"], ["0", "1"], ["-1", "-1"]])
    b = generalized_nakamura([["0", "1"], ["-1", "-1"], ["1", "0"]])
    assert sorted(map(len, (admissible_basis(a, k) for k in range(9)))) == \
        sorted(map(len, (admissible_basis(b, k) for k in range(9))))
    assert Weight.parse([1, 0]) in a.lambdas
