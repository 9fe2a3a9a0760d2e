from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gl2modp.crystab import (CrystabParam, GeneralWeightProfile, SmoothCharQpL, crystab_param_valid,
                             crystab_vals_valid, mainQp_check, ordinary_data, reform_check,
                             sqrt_in_tower, thmB_check, thmQp_region, witness_to_json)
from gl2modp.exactmath import default_context
from gl2modp.galoismodp import Irred, Red, inertia_data, omega2_pair
from gl2modp.smoothmodp import (Branch, HypothesisRejected, ModPCharQp, OneDim, PrincipalSeries,
                                SemisimpleSmoothPackage, Steinberg, addsoc_constraint, kappa_for,
                                supersingular)
from gl2modp.weights import SerreWeight, SmoothCharZp, all_weights

CTX5 = default_context(5)
T5 = SmoothCharZp(5)


def chi(lam, b=0, ctx=CTX5):
    return ModPCharQp(ctx.elem(lam), b)


def qpl(val, residue=None, tame=0, p=5, ctx=CTX5):
    return SmoothCharQpL(SmoothCharZp(p, tame), Fraction(val),
                         None if residue is None else ctx.elem(residue))


# --- parameter space ---------------------------------------------------------

def test_crystab_param_examples():
    assert crystab_vals_valid(2, Fraction(-1, 2), Fraction(-1, 2))
    assert crystab_vals_valid(3, -1, -1)
    assert not crystab_vals_valid(3, 0, -2)
    assert crystab_param_valid(CrystabParam(qpl("-1/2"), qpl("-1/2"), 2))


# --- reform ------------------------------------------------------------------

def test_reform_examples():
    assert reform_check(GeneralWeightProfile(1, [0]), 0, 1).passed
    assert reform_check(GeneralWeightProfile(1, [3]), 1, 3).passed
    rep = reform_check(GeneralWeightProfile(1, [3]), -1, 5)
    assert not rep.passed and rep.failed_conditions == ("(ii)",)


def test_reform_central_scalar_relation():
    rep = reform_check(GeneralWeightProfile(2, [1, 2], Fraction(1, 3)), Fraction(4, 3), Fraction(4, 3))
    # lambda1 lambda2 = p^{1/e} eta^2 prod sigma(pi)^{r_sigma}: 1/2 + 2/3 + 3/2 = 8/3
    assert rep.central_scalar_relation["holds"] and rep.passed


def test_reform_steinberg_case():
    ok = reform_check(GeneralWeightProfile(1, [0]), 0, 1, steinberg_case=True)
    assert ok.passed and ok.steinberg["vals_forced"]
    bad = reform_check(GeneralWeightProfile(1, [2]), 1, 2, steinberg_case=True)
    assert "steinberg: r_sigma = 0" in bad.failed_conditions
    bad = reform_check(GeneralWeightProfile(1, [0]), Fraction(1, 2), Fraction(1, 2), steinberg_case=True)
    assert bad.failed_conditions == ("steinberg: (val lam1, val lam2) = (0, 1/e)",)


def test_reform_rejects_malformed_profile():
    with pytest.raises(ValueError):
        GeneralWeightProfile(0, [1])
    with pytest.raises(ValueError):
        GeneralWeightProfile(1, [-1])


@given(st.integers(1, 3), st.lists(st.integers(0, 4), min_size=1, max_size=3),
       st.fractions(max_denominator=4), st.fractions(max_denominator=4), st.fractions(max_denominator=4),
       st.fractions(max_denominator=4))
@settings(max_examples=120)
def test_reform_shift_invariance(e, r_vec, v1, v2, ve, shift):
    a = reform_check(GeneralWeightProfile(e, r_vec, ve), v1, v2)
    b = reform_check(GeneralWeightProfile(e, r_vec, ve + shift), v1 + shift, v2 + shift)
    assert a.failed_conditions == b.failed_conditions


# --- ordinary case -------------------------------------------------------------

def test_ordinary_example_general_k():
    k = 6
    od = ordinary_data(qpl(0, 1), qpl(-(k - 1), 3), qpl(0, 1), [k - 2])
    assert od.psi1 == chi(1)
    assert od.psi2 == chi(3, k - 2)
    assert od.ps == SemisimpleSmoothPackage([PrincipalSeries(chi(1), chi(3, k - 2))])


def test_ordinary_trivial_chi1_eta():
    od = ordinary_data(qpl(0, 1), qpl(-1, 1), qpl(0, 1), [0])
    assert od.psi1 == chi(1)
    assert od.ps == SemisimpleSmoothPackage([OneDim(chi(1)), Steinberg(chi(1))])


def test_ordinary_theta_exponent_bookkeeping():
    od = ordinary_data(qpl(0, 1), qpl(-2, 1), qpl(0, 1), [1])
    assert od.psi2.b == 1


def test_ordinary_rejections():
    with pytest.raises(HypothesisRejected) as exc:
        ordinary_data(qpl(1, 1), qpl(-1, 1), qpl(0, 1), [0])
    assert exc.value.failed == ["val(lam1) = val(eta(p))"]
    with pytest.raises(HypothesisRejected) as exc:
        ordinary_data(qpl(0, 1), qpl(0, 1), qpl(0, 1), [0])
    assert exc.value.failed == ["integrality of chi2 |.|^{-1} eta theta"]
    with pytest.raises(ValueError):
        ordinary_data(qpl(0), qpl(-1, 1), qpl(0, 1), [0])


def test_ordinary_with_eta_valuation():
    # val(chi1(p)) = -val(eta(p)) is the integrality of chi1 eta
    od = ordinary_data(qpl(1, 2), qpl(-2, 1), qpl(-1, 3), [2])
    assert od.psi1 == chi(1) and od.psi2 == chi(3, 2)


# --- thmQp_region -------------------------------------------------------------

def test_region_supersingular_strict():
    reg = thmQp_region(SerreWeight(5, 1, 0), supersingular(1, chi(1)), 7, T5, T5)
    assert reg.strict and reg.nonempty() and reg.distinct
    assert reg.contains(-3, -3) and not reg.contains(0, -6) and not reg.contains(-2, -3)
    js = reg.to_json()
    assert js["relation"] == "val1 + val2 = -6" and js["strict"] is True


def test_region_rejects_missing_socle():
    with pytest.raises(HypothesisRejected) as exc:
        thmQp_region(SerreWeight(5, 1, 0), OneDim(chi(1)), 7, T5, T5)
    assert "socle" in exc.value.failed


def test_region_ordinary_fixture_non_strict():
    reg = thmQp_region(SerreWeight(5, 0, 0), OneDim(chi(1)), 2, T5, T5)
    assert not reg.strict and reg.contains(0, -1)


def test_region_rejects_each_hypothesis():
    with pytest.raises(HypothesisRejected) as exc:
        thmQp_region(SerreWeight(5, 0, 0), OneDim(chi(2)), 2, T5, T5)
    assert "p_acts_trivially" in exc.value.failed
    with pytest.raises(HypothesisRejected) as exc:
        thmQp_region(SerreWeight(5, 1, 0), supersingular(1, chi(1)), 4, T5, T5)
    assert set(exc.value.failed) == {"central_character", "subquotient"}


@pytest.mark.parametrize("p", [3, 5])
def test_region_strict_exactly_off_addsoc(p):
    ctx = default_context(p)
    triv = SmoothCharZp(p)
    for k in range(2, 2 * p + 2):
        for sigma in all_weights(p):
            branches = [Branch("a")] + [Branch("b", lam) for lam in ctx.field.units]
            for br in branches:
                kappa = kappa_for(ctx, sigma, br)
                if kappa.central_character().lam != 1:
                    continue
                try:
                    reg = thmQp_region(sigma, kappa, k, triv, triv)
                except HypothesisRejected:
                    continue
                # ordered pairs (theta1, theta2 w^{k-2}) and (theta2, theta1 w^{k-2})
                shapes = {(0, (k - 2) % (p - 1))}
                ordinary = br.kind == "b" and addsoc_constraint(sigma) in shapes
                assert reg.strict == (not ordinary), (k, sigma, br)


# --- mainQp -------------------------------------------------------------------

def test_mainqp_fixture():
    wit = mainQp_check(CTX5, Irred(5, 1, 0), 7, T5, T5)
    assert wit.sigma == SerreWeight(5, 1, 0)
    assert wit.kappa == supersingular(1, chi(1))
    assert wit.branch == Branch("a")
    assert wit.region.strict and wit.region.nonempty()
    assert [m.sigma for m in wit.matches] == [SerreWeight(5, 1, 0), SerreWeight(5, 3, 1)]
    js = witness_to_json(CTX5, wit)
    assert {"sigma", "kappa", "branch", "region", "notes"} <= set(js)
    assert {"k", "relation", "bounds", "strict", "theta1", "theta2"} <= set(js["region"])
    assert [m["first"] for m in js["matches"]] == [True, False]


def test_mainqp_inertia_exclusion():
    with pytest.raises(HypothesisRejected) as exc:
        mainQp_check(CTX5, Red(chi(1, 2), chi(1, 0)), 7, T5, T5)
    assert exc.value.failed == ["(b) inertia exclusion"]


def test_mainqp_k2_needs_ramified_coefficients():
    ctx = default_context(3)
    triv = SmoothCharZp(3)
    wit = mainQp_check(ctx, Irred(3, 0, 0), 2, triv, triv)
    assert wit.region.strict and wit.region.contains(Fraction(-1, 2), Fraction(-1, 2))
    assert wit.region.min_ramification() == 2
    assert any("ramification index 2" in n for n in wit.notes)
    assert wit.k2_special


def test_mainqp_other_rejections():
    with pytest.raises(HypothesisRejected) as exc:
        mainQp_check(CTX5, Irred(5, 0, 0), 7, T5, T5)
    assert exc.value.failed == ["central character mismatch"]
    with pytest.raises(HypothesisRejected) as exc:
        mainQp_check(CTX5, Red(chi(2, 1), chi(2, 1)), 7, T5, T5)
    assert exc.value.failed == ["determinant unramified part"]
    with pytest.raises(HypothesisRejected) as exc:
        mainQp_check(CTX5, Irred(5, 1, 2), 3, T5, T5)  # det omega^2 matches, no weight does
    assert exc.value.failed == ["no matching σ"]


def test_mainqp_reducible_witness():
    wit = mainQp_check(CTX5, Red(chi(2, 1), chi(3, 1)), 7, T5, T5)
    assert wit.branch.kind == "b" and wit.region.strict


# --- Theorem B ----------------------------------------------------------------

def test_thmb_condition_e():
    t1 = SmoothCharZp(5, 1)
    with pytest.raises(HypothesisRejected) as exc:
        thmB_check(CTX5, Red(chi(2, 1), chi(3, 0)), 5, t1, T5)
    assert exc.value.failed == ["(e)"]


def test_thmb_condition_a():
    with pytest.raises(HypothesisRejected) as exc:
        thmB_check(CTX5, Irred(5, 2, 0), 4, T5, T5)
    assert exc.value.failed == ["(a)"]


def test_thmb_condition_b_and_c():
    with pytest.raises(HypothesisRejected) as exc:
        thmB_check(CTX5, Irred(5, 0, 0), 3, SmoothCharZp(5, 1), T5)
    assert exc.value.failed == ["(b)", "(c)"]


def test_thmb_accepts_large_weight():
    ctx = default_context(3)
    triv = SmoothCharZp(3)
    wit = thmB_check(ctx, Irred(3, 0, 0), 10, triv, triv)
    assert wit.region.strict and wit.region.nonempty()


def test_thmb_twists_reducible_determinant():
    # c = 1, k = 6: det must be omega^2, excluded inertia {1,1} and {0,2}
    rho = Red(chi(2, 3), chi(1, 3))  # det unramified part 2
    wit = thmB_check(CTX5, rho, 6, SmoothCharZp(5, 1), T5)
    assert wit.twist is not None and wit.twist * wit.twist * 2 == 1
    assert wit.sigma == SerreWeight(5, 3, 3)
    assert any("twisted" in n for n in wit.notes)


@pytest.mark.parametrize("k", range(2, 12))
def test_mainqp_acceptance_implies_c_and_e(k):
    for rho in [Irred(5, r, a) for r, a in product(range(5), range(4))] + \
               [Red(chi(1, b1), chi(1, b2)) for b1, b2 in product(range(4), repeat=2)]:
        try:
            mainQp_check(CTX5, rho, k, T5, T5)
        except HypothesisRejected:
            continue
        inert = inertia_data(rho)
        assert inert.det_exponent == (k - 1) % 4
        assert inert.omega2 != omega2_pair(5, 0, k - 1)


def test_sqrt_in_tower():
    ctx = default_context(3)
    for x in ctx.field.units:
        y = sqrt_in_tower(ctx, x)
        assert y * y == x
