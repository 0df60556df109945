from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvco.algebra import Coeff, Gaussian
from solvco.kodaira import (CoframeError, DeformationParams, delbar_top_form_j, delbar_top_form_n5,
                            integrability_check, jstructure_coframe, jstructure_frame,
                            jstructure_omega_check, n5_deformed_coframe, n5_holomorphic_coframe,
                            nijenhuis_witnesses, product_holomorphic_coframe, torus_coframe)

T_VALUES = [(1, 1), (Fraction(1, 3), Fraction(1, 4)), (Fraction(1, 2), 0), (2, -3)]


@pytest.mark.parametrize("t", T_VALUES, ids=str)
def test_deformed_structure_equations(t):
    res = n5_deformed_coframe(t)
    assert res["independent"]
    assert res["block_squares_to_minus_identity"]
    assert res["all_match"], {k: v for k, v in res["equations"].items() if not v["matches"]}


def test_deformation_parameters_at_one_one():
    p = DeformationParams(1, 1)
    assert (p.alpha, p.beta, p.gamma) == (2, 1, -5)


def test_undeformed_parameter_gives_zero_alpha():
    assert DeformationParams(Fraction(1, 2), 0).alpha == 0


@pytest.mark.parametrize("t", T_VALUES, ids=str)
def test_delbar_of_top_form(t):
    res = delbar_top_form_n5(t)
    assert res["matches"]
    assert res["alpha"] == DeformationParams(*t).alpha


def test_delbar_of_top_form_at_one_one_is_i_lam2():
    res = delbar_top_form_n5((1, 1))
    assert res["coefficient"] == str(Coeff.symbol("lam2", 1, Gaussian(0, 1)))


def test_delbar_of_top_form_scales_linearly():
    assert delbar_top_form_n5((1, 1), scale=3)["matches"]
    assert delbar_top_form_n5((Fraction(1, 3), Fraction(1, 4)), scale=Gaussian(1, 2))["matches"]


def test_unit_circle_rejected():
    with pytest.raises(CoframeError):
        DeformationParams(1, 0)
    with pytest.raises(CoframeError):
        DeformationParams(Fraction(3, 5), Fraction(4, 5))


@settings(max_examples=50, deadline=None)
@given(st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5))
def test_block_is_complex_structure(t1, t2):
    if t1 * t1 + t2 * t2 == 1 or (t1 == 1 and t2 == 0):
        return
    assert DeformationParams(t1, t2).block_squares_to_minus_identity()


# --- the product-family structure ------------------------------------------------------

@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1)])
def test_jstructure_equations(n, m):
    res = jstructure_coframe(n, m)
    assert res["independent"]
    assert res["all_match"]


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2)])
def test_jstructure_top_form_is_delbar_closed(n, m):
    assert not delbar_top_form_j(n, m)
    assert not delbar_top_form_j(n, m, scale=Gaussian(2, -1))


@pytest.mark.parametrize("drop", ["beta1", "beta2", "alpha1"])
def test_dropping_a_factor_breaks_closedness(drop):
    assert delbar_top_form_j(1, 1, drop=drop)


def test_drop_must_be_a_factor():
    with pytest.raises(CoframeError):
        delbar_top_form_j(1, 1, drop="gamma1")


def test_jstructure_compatible_with_default_form():
    res = jstructure_omega_check(1, 1)
    assert res["matches_unit_scaled_form"]
    assert res["tamed"] and res["compatible"] and res["J_invariant"]


# --- integrability -----------------------------------------------------------------------

def test_holomorphic_coframes_are_integrable():
    assert integrability_check(n5_holomorphic_coframe())
    assert integrability_check(product_holomorphic_coframe(1, 1))
    assert integrability_check(product_holomorphic_coframe(1, 2))
    assert integrability_check(torus_coframe(2))


def test_jstructure_not_integrable():
    cf, _ = jstructure_frame(1, 1)
    assert not integrability_check(cf)
    assert nijenhuis_witnesses(cf)
    assert not nijenhuis_witnesses(product_holomorphic_coframe(1, 1))
