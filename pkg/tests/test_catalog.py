import cmath

import numpy as np
import pytest

from heunint import catalog as C
from heunint.errors import ConstraintError, DomainError, InvalidInstance
from heunint.jet import Jet
from heunint.series import PARAM_NAMES, Family, ParamSet, canonical_solution, heun_eval, ode_from_family
from heunint.verify import check_derivative, interior_grid

CH_TOY = ParamSet(Family.CH, (0, 0, 0, 0, 1))


def residual(inst, x):
    I = C.integrand(inst, x)
    return abs(C.antiderivative(inst, Jet.variable(x, 1)).coeffs[1] - I)


def test_catalog_table():
    table = C.list_identities()
    assert len(table) == 23
    cons = {id: c for id, _, c in table}
    assert "η = η₀ = (1+β)α/2 − (1+γ)β/2 − γ/2" in cons[C.IdentityId.CH_BESSEL]
    assert "γ ≠ 0" in cons[C.IdentityId.DC_CONJ]


def test_validity_rejects_zero_eta_and_zero_gamma():
    r = C.validity(C.IdentityId.CH_CONJ, ParamSet(Family.CH, (0.3, 0.2, -0.1, 0.4, 0)))
    assert not r.ok and r.violations[0][0] == "η ≠ 0"
    r = C.validity(C.IdentityId.DC_CONJ, ParamSet(Family.DC, (0.3, 0.2, 0, 0.4)))
    assert not r.ok and r.violations[0][0] == "γ ≠ 0"


def test_validity_case_selection_and_resonance_flag():
    r = C.validity(C.IdentityId.TC_H3, ParamSet(Family.TC, (0.5, 1.0, 0)))
    assert r.ok and r.case == "gamma=0"
    assert C.validity(C.IdentityId.TC_H3, ParamSet(Family.TC, (0.5, 1.0, 0.7))).case == "gamma>0"
    assert C.validity(C.IdentityId.TC_H3, ParamSet(Family.TC, (0.5, 1.0, 0.7j))).case == "gamma<0"
    r = C.validity(C.IdentityId.CH_STANJEL, ParamSet(Family.CH, (0, -1, 0, 0.7, 0.5)))
    assert r.ok and r.resonant


def test_validity_ties_and_special_exclusions():
    r = C.validity(C.IdentityId.CH_ZERO_DER1, ParamSet(Family.CH, (0.4, 0.3, 0.1, 0.0, 0.2)))
    assert not r.ok and "delta" in r.violations[0][0]
    for a in (1, -1):
        r = C.validity(C.IdentityId.BC_ZERO_SPC, ParamSet(Family.BC, (a, 0.5, a + 2, 0.3)))
        assert not r.ok
    assert C.validity(C.IdentityId.BC_ZERO_SPC, ParamSet(Family.BC, (0.5, 1, 2.5, 0.2))).ok
    r = C.validity(C.IdentityId.CH_ZERO, ParamSet(Family.CH, (0, -1, 0, 0, 1)))
    assert not r.ok
    # BC_H3 with Delta = 0 needs beta outside [-4, 0]
    b = -2.0
    r = C.validity(C.IdentityId.BC_H3, ParamSet(Family.BC, (-1 - b * b / 8, b, 0.3, 0.2)))
    assert r.case == "delta=0" and not r.ok


def test_instantiate_defaults_and_guards():
    inst = C.instantiate(C.IdentityId.CH_ZERO, CH_TOY)
    assert inst.domain == (0.05, 0.85)
    hc = C.HChoice(0, 1, 0.2, 1.0, "sin")
    inst = C.instantiate(C.IdentityId.DC_ELEM, ParamSet(Family.DC, (0.2, 1, 0.5, 0.3)), hc)
    assert inst.domain[0] > 0
    with pytest.raises(InvalidInstance):
        C.instantiate(C.IdentityId.CH_STANJEL, ParamSet(Family.CH, (0, -1, 0, 0.7, 0.5)))
    with pytest.raises(InvalidInstance):
        C.instantiate(C.IdentityId.CH_ELEM, CH_TOY)  # missing h choice
    with pytest.raises(DomainError):
        C.integrand(C.instantiate(C.IdentityId.CH_ZERO, CH_TOY), 0.95)


def test_ch_zero_limits_at_origin():
    inst = C.instantiate(C.IdentityId.CH_ZERO, CH_TOY, domain=(1e-10, 0.5))
    assert C.integrand(inst, 1e-10) == pytest.approx(2, rel=1e-8)
    assert abs(C.antiderivative(inst, 1e-10)) < 1e-8


def test_stanjel_integrand_is_the_solution():
    mode = C.SeedMode.arbitrary(1.0, 0.3, anchor=0.5)
    inst = C.instantiate(C.IdentityId.CH_STANJEL, ParamSet(Family.CH, (0, -1, 0, 0.7, 0.5)), seed_mode=mode)
    assert C.integrand(inst, 0.5) == pytest.approx(1.0)
    assert check_derivative(inst, interior_grid(inst.domain, 11)).status == "pass"


def test_tc_elem_near_origin_matches_generic_construction():
    hc = C.HChoice(1, 1, 0, 1, "sin")
    inst = C.instantiate(C.IdentityId.TC_ELEM, ParamSet(Family.TC, (1, 3, 0)), hc, domain=(1e-8, 1.0))
    I = C.integrand(inst, 1e-8)
    Ig, _ = C.generic_pair(inst, 1e-8)
    # h = x sin x gives h'' -> 2 while p h' and q h vanish at 0, so the limit is 2
    assert I == pytest.approx(Ig, rel=1e-12)
    assert I == pytest.approx(2, rel=1e-6)


def test_bc_zero_spc_explicit_value():
    p = ParamSet(Family.BC, (0.5, 1, 2.5, 0.2))
    inst = C.instantiate(C.IdentityId.BC_ZERO_SPC, p)
    x = 0.4
    w = heun_eval(canonical_solution(Family.BC, ParamSet(Family.BC, (1.5, 1, -0.5, 1.2))), x)[0]
    expect = x**1.5 / 1.5 * cmath.exp(-x * x - x) * w
    assert C.antiderivative(inst, x) == pytest.approx(expect, rel=1e-13)


def test_ch_conj_explicit_value():
    p = ParamSet(Family.CH, (0.3, 0.2, -0.1, 0.4, 0.7))
    inst = C.instantiate(C.IdentityId.CH_CONJ, p)
    x = 0.3
    yp, dyp = heun_eval(canonical_solution(Family.CH, p), x)
    ym, dym = heun_eval(canonical_solution(Family.CH, p.replace(eta=-0.7)), x)
    pref = x**1.2 / 1.4 * (x - 1 + 0j) ** 0.9 * cmath.exp(0.3 * x)
    assert C.antiderivative(inst, x) == pytest.approx(pref * (dym * yp - ym * dyp), rel=1e-13)


def test_lagrangian_pair_reductions():
    p = ParamSet(Family.DC, (0.3, -0.4, 0.8, 0.2))
    ode = ode_from_family(Family.DC, p)
    x = 0.35
    y, dy = heun_eval(canonical_solution(Family.DC, p), x)
    f = C.family_f(Family.DC, p, x)
    I, F = C.lagrangian_pair(Family.DC, p, lambda X: 3.0 + 0 * X, x)
    assert I == pytest.approx(3 * f * ode.q(x) * y)
    assert F == pytest.approx(-3 * f * dy)
    sol = canonical_solution(Family.DC, p)
    from heunint.series import heun_jet

    _, F = C.lagrangian_pair(Family.DC, p, lambda X: heun_jet(sol, X.x0.real, 2), x)
    assert abs(F) < 1e-14


def test_conjugate_pair_rules():
    p = ParamSet(Family.CH, (0.3, 0.2, -0.1, 0.4, 0.7))
    I, F0 = C.conjugate_pair(Family.CH, p, p, 0.3)
    assert I == 0
    _, F1 = C.conjugate_pair(Family.CH, p, p, 0.6)
    assert F1 == pytest.approx(F0, abs=1e-12)  # Abel: f W is constant
    with pytest.raises(ConstraintError):
        C.conjugate_pair(Family.CH, p, p.replace(alpha=0.5, eta=-0.7), 0.3)
    t = ParamSet(Family.TC, (0, 1.5, 0.4))
    assert C.conjugate_pair(Family.TC, t, C.conjugate_params(C.IdentityId.TC_CONJ, t), 0.5)[0] == 0


def test_branch_flip_keeps_residual():
    p = ParamSet(Family.CH, (0.3 + 0.2j, 0.4, -0.3 + 0.5j, 0.2, 0.6))
    plus = C.instantiate(C.IdentityId.CH_ZERO, p, branch=1)
    minus = C.instantiate(C.IdentityId.CH_ZERO, p, branch=-1)
    x = 0.4
    assert C.integrand(plus, x) != pytest.approx(C.integrand(minus, x))
    assert residual(plus, x) < 1e-12 and residual(minus, x) < 1e-12
    g = interior_grid(plus.domain, 9)
    assert abs(check_derivative(plus, g).max_rel_err - check_derivative(minus, g).max_rel_err) < 1e-10


@pytest.mark.parametrize("values,case", [
    ((0.6, -1.8, 0.3, 0.2, 0.1), "delta>0"),
    ((0.6, 0.5, 0.3, 0.2, 0.1), "delta<0"),
])
def test_ch_h3_real_cases(values, case):
    p = ParamSet(Family.CH, values)
    r = C.validity(C.IdentityId.CH_H3, p)
    assert r.case == case
    inst = C.instantiate(C.IdentityId.CH_H3, p)
    for x in interior_grid(inst.domain, 5):
        assert residual(inst, x) < 1e-10


def test_ch_h3_delta_zero_case():
    # C = 2a, B = b+g+2-a, A = -2(b+1); choose g so that AC = B^2 with the pole outside [0, 1]
    a, b = 1.0, -3.5
    B = cmath.sqrt(-2 * (b + 1) * 2 * a).real
    g = B - b - 2 + a
    p = ParamSet(Family.CH, (a, b, g, 0.3, 0.2))
    assert C.validity(C.IdentityId.CH_H3, p).case == "delta=0"
    inst = C.instantiate(C.IdentityId.CH_H3, p, seed_mode=C.SeedMode.arbitrary(1.0, 0.2))
    for x in interior_grid(inst.domain, 5):
        assert residual(inst, x) < 1e-10


def test_bc_h3_delta_positive_and_zero():
    p = ParamSet(Family.BC, (-2.5, 0.5, 0.3, 0.4))
    assert C.validity(C.IdentityId.BC_H3, p).case == "delta>0"
    inst = C.instantiate(C.IdentityId.BC_H3, p)
    for x in interior_grid(inst.domain, 5):
        assert residual(inst, x) < 1e-10
    b = 1.0
    p = ParamSet(Family.BC, (-1 - b * b / 8, b, 0.3, 0.2))
    assert C.validity(C.IdentityId.BC_H3, p).case == "delta=0"
    inst = C.instantiate(C.IdentityId.BC_H3, p)
    for x in interior_grid(inst.domain, 5):
        assert residual(inst, x) < 1e-10


def test_dc_elem_typeset_coefficient_differs_by_monomial():
    hc = C.HChoice(2, 1, 0.3, 0.8, "cos")
    p = ParamSet(Family.DC, (0.2, 1.0, -0.5, 0.3))
    inst = C.instantiate(C.IdentityId.DC_ELEM, p, hc)
    x = 0.5
    diff = C.dc_elem_integrand(inst, x, printed=True) - C.integrand(inst, x)
    # b4 differs by 2 m^2, multiplying x^4 cos(kx) inside the bracket
    y = heun_eval(canonical_solution(Family.DC, p), x)[0]
    pref = x ** (hc.m - 2) * cmath.exp(0.2 * x / (x * x - 1) + hc.rho * x) / (x * x - 1) ** 2
    assert diff == pytest.approx(pref * 2 * hc.m**2 * x**4 * cmath.cos(hc.k * x) * y, rel=1e-10)


def test_hchoice_validation():
    with pytest.raises(ValueError):
        C.HChoice(-1, 0)
    with pytest.raises(ValueError):
        C.HChoice(0, 0, trig="tan")


def test_default_domains_avoid_singular_points():
    for fam, (lo, hi) in C.DEFAULT_DOMAINS.items():
        p = ParamSet(fam, [0.1] * len(PARAM_NAMES[fam]))
        assert lo < hi
        assert all(not (lo <= s.real <= hi and s.imag == 0) for s in ode_from_family(fam, p).sing)
