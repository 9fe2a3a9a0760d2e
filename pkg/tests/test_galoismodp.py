from itertools import product

import pytest

from gl2modp.exactmath import default_context
from gl2modp.galoismodp import (Irred, Red, inertia_data, llc_smooth_side, normal_form,
                                twist_unramified)
from gl2modp.smoothmodp import (ModPCharQp, OneDim, PrincipalSeries, SemisimpleSmoothPackage,
                                Steinberg, supersingular)

CTX = default_context(5)


def chi(lam, b=0, ctx=CTX):
    return ModPCharQp(ctx.elem(lam), b)


def test_normal_form_examples():
    assert normal_form(Irred(5, 3, 1)) == Irred(5, 1, 0)
    assert Red(chi(2, 1), chi(3, 1)) == Red(chi(3, 1), chi(2, 1))
    assert normal_form(Red(chi(2, 1), chi(3, 1))) == Red(chi(3, 1), chi(2, 1))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_normal_form_orbits_and_idempotence(p):
    for r, a in product(range(p), range(p - 1)):
        x = normal_form(Irred(p, r, a))
        assert x == normal_form(Irred(p, p - 1 - r, a + r))
        assert normal_form(x) == x
        # equal inertia data on both representatives
        assert inertia_data(Irred(p, r, a)).omega2 == inertia_data(Irred(p, p - 1 - r, a + r)).omega2


def test_inertia_examples():
    d = inertia_data(Red(chi(2, 3), chi(3, 0)))
    assert set(d.exponents) == {3, 0} and d.det_exponent == 3
    d = inertia_data(Irred(5, 0, 0))
    assert set(d.exponents) == {1, 5} and d.det_exponent == 1
    d = inertia_data(Irred(5, 1, 1))
    assert d.exponents == (8, 16) and d.det_exponent == 0


@pytest.mark.parametrize("p", [3, 5, 7])
def test_irreducible_inertia_is_frobenius_stable(p):
    n = p * p - 1
    for r, a in product(range(p), range(p - 1)):
        s, t = inertia_data(Irred(p, r, a)).exponents
        assert t == p * s % n and p * t % n == s
        assert s % (p + 1) != 0


def test_llc_examples():
    assert llc_smooth_side(Irred(5, 0, 0)) == SemisimpleSmoothPackage([supersingular(0, chi(1))])
    got = llc_smooth_side(Red(chi(1, 1), chi(1, 1)))
    ps = PrincipalSeries(chi(1, 1), chi(1, 0))
    assert got == SemisimpleSmoothPackage([ps, ps])
    got = llc_smooth_side(Red(chi(2), chi(3)))
    assert got == SemisimpleSmoothPackage([PrincipalSeries(chi(2), chi(3, -1)),
                                           PrincipalSeries(chi(3), chi(2, -1))])


def test_llc_equal_characters_split_off_steinberg():
    # psi2 omega^{-1} = psi1 happens for Red{mu_1 omega, mu_1}
    got = llc_smooth_side(Red(chi(1, 0), chi(1, 1)))
    assert OneDim(chi(1, 0)) in got and Steinberg(chi(1, 0)) in got


@pytest.mark.parametrize("p", [3, 5])
def test_llc_respects_normal_form(p):
    ctx = default_context(p)
    for r, a in product(range(p), range(p - 1)):
        rho = Irred(p, r, a)
        assert llc_smooth_side(normal_form(rho), ctx) == llc_smooth_side(rho, ctx)


def test_twist_unramified():
    rho = Red(chi(2, 1), chi(3, 1))
    assert twist_unramified(rho, CTX.field(2)) == Red(chi(4, 1), chi(1, 1))
    assert twist_unramified(Irred(5, 1, 0), CTX.field(-1)) == Irred(5, 1, 0)
    with pytest.raises(ValueError):
        twist_unramified(Irred(5, 1, 0), CTX.field(2))
