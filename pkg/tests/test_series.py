from fractions import Fraction

import numpy as np
import pytest

from heunint.errors import ConvergenceError, DomainError, ResonanceError
from heunint.jet import Jet
from heunint.series import (
    AUTO,
    Family,
    ParamSet,
    SeedPair,
    Solution,
    canonical_solution,
    continue_solution,
    heun_eval,
    heun_jet,
    ode_from_family,
    ode_residual,
    seeds_for,
    taylor_coeffs,
)
from heunint.special import hyp1f1

TOY = ParamSet(Family.CH, (0, 0, 0, 0, 1))


def toy_coeffs(n):
    # x(x-1)y'' + (2x-1)y' + y = 0  =>  c_{m+1} = (m^2+m+1) c_m / (m+1)^2, exactly
    c = [Fraction(1)]
    for m in range(n):
        c.append(c[-1] * (m * m + m + 1) / (m + 1) ** 2)
    return c


def toy_value(x, n=60):
    x = Fraction(x)
    return float(sum(ci * x**i for i, ci in enumerate(toy_coeffs(n))))


def toy_value_float(x, n=8000):
    # same hand recurrence in floating point, for points where exact sums get too large
    total, term = 1.0, 1.0
    for m in range(n):
        term *= (m * m + m + 1) / (m + 1) ** 2 * x
        total += term
    return total


def test_paramset_validation():
    with pytest.raises(ValueError):
        ParamSet(Family.TC, (1, 2))
    p = ParamSet(Family.BC, (1, 2, 3, 4))
    assert p.gamma == 3
    assert p.replace(gamma=0).values == (1, 2, 0, 4)


def test_ode_tc_and_dc_forms():
    a, b, g = 0.5, 1.5, -0.25
    ode = ode_from_family(Family.TC, ParamSet(Family.TC, (a, b, g)))
    assert ode.A == (1,)
    assert ode.B == (-g, 0, -3)
    assert ode.C == (a, b - 3)
    assert ode.sing == ()
    p = ParamSet(Family.DC, (0.3, 1, 2, 3))
    ode = ode_from_family(Family.DC, p)
    x = 0.37
    assert np.polyval(ode.A[::-1], x) == pytest.approx((x * x - 1) ** 3)
    assert np.polyval(ode.B[::-1], x) == pytest.approx((2 * x**3 - 0.3 * x**2 - 2 * x - 0.3) * (x * x - 1))
    assert np.polyval(ode.C[::-1], x) == pytest.approx(1 * x * x + (2 + 0.6) * x + 3)
    assert set(ode.sing) == {-1.0, 1.0}


def test_ode_ch_toy_reduces_to_hand_form():
    ode = ode_from_family(Family.CH, TOY)
    assert ode.A == (0, -1, 1)
    assert ode.B == (-1, 2, 0)
    assert ode.C == (1, 0)


def test_seeds():
    assert seeds_for(Family.TC, ParamSet(Family.TC, (1, 2, 3))) == SeedPair(1, 0)
    assert seeds_for(Family.CH, TOY).y1 is AUTO
    with pytest.raises(ResonanceError):
        seeds_for(Family.CH, ParamSet(Family.CH, (0, -2, 0, 0, 1)))
    with pytest.raises(ResonanceError):
        seeds_for(Family.BC, ParamSet(Family.BC, (-1, 0, 0, 0)))


def test_toy_series_matches_exact_recurrence():
    c = taylor_coeffs(ode_from_family(Family.CH, TOY), seeds_for(Family.CH, TOY), 12)
    exact = [float(v) for v in toy_coeffs(12)]
    assert np.allclose(c.real, exact, rtol=1e-15)
    assert np.allclose(c[:5].real, [1, 1, 0.75, 7 / 12, 91 / 192])


def test_bc_and_tc_coefficient_examples():
    p = ParamSet(Family.BC, (1, 2, 0, 0))
    c = taylor_coeffs(ode_from_family(Family.BC, p), seeds_for(Family.BC, p), 3)
    assert c[1] == pytest.approx(1)
    p = ParamSet(Family.TC, (0, 3, 0))
    c = taylor_coeffs(ode_from_family(Family.TC, p), seeds_for(Family.TC, p), 8)
    assert np.all(c[1:] == 0)


def test_toy_value_against_exact_series():
    # the exact value at 0.1 is 1.108135086..., the rounded 8-term partial sum is 1.1081347
    y, dy = heun_eval(canonical_solution(Family.CH, TOY), 0.1)
    assert y == pytest.approx(toy_value(0.1), rel=1e-14)
    assert abs(y - 1.1081347) < 1e-6
    dexact = float(sum(i * ci * Fraction(1, 10) ** (i - 1) for i, ci in enumerate(toy_coeffs(60)) if i))
    assert dy == pytest.approx(dexact, rel=1e-13)


def test_continuation_reaches_beyond_root_disc():
    sol = canonical_solution(Family.CH, TOY)
    for x in (0.75, 0.9, 0.97):
        assert heun_eval(sol, x)[0] == pytest.approx(toy_value_float(x), rel=1e-11)


def test_tc_initial_conditions_and_constant_solution():
    sol = canonical_solution(Family.TC, ParamSet(Family.TC, (1, 3, 0)))
    assert heun_eval(sol, 0.0) == (1, 0)
    const = canonical_solution(Family.TC, ParamSet(Family.TC, (0, 3, 0)))
    y, dy = heun_eval(const, 1.2)
    assert y == pytest.approx(1) and abs(dy) < 1e-14


@pytest.mark.parametrize("alpha,gamma", [(1, 0.5), (0.3 + 0.4j, -1.1), (-0.5, 1.7)])
def test_bc_kummer_reduction(alpha, gamma):
    sol = canonical_solution(Family.BC, ParamSet(Family.BC, (alpha, 0, gamma, 0)))
    for x in np.linspace(-0.8, 0.8, 9):
        ref = hyp1f1((alpha + 2 - gamma) / 4, 1 + alpha / 2, x * x)
        assert heun_eval(sol, x)[0] == pytest.approx(ref, rel=1e-10)


def test_kummer_jet_solves_bc_equation():
    a, g = 1.0, 0.5
    X = Jet.variable(0.4, 3)
    y = hyp1f1((a + 2 - g) / 4, 1 + a / 2, X * X)
    assert abs(ode_residual(Family.BC, ParamSet(Family.BC, (a, 0, g, 0)), y)) < 1e-10


def test_jet_at_anchor_is_taylor_series_and_matches_fd():
    sol = canonical_solution(Family.CH, TOY)
    j = heun_jet(sol, 0.0, 4)
    assert np.allclose(j.coeffs, sol.coeffs0[:5])
    j = heun_jet(sol, 0.3, 4)
    h = 1e-4
    f = lambda x: heun_eval(sol, x)[0]
    assert j.derivative(1) == pytest.approx((f(0.3 + h) - f(0.3 - h)) / (2 * h), rel=1e-6)
    assert j.derivative(2) == pytest.approx((f(0.3 + h) - 2 * f(0.3) + f(0.3 - h)) / h**2, rel=1e-6)


@pytest.mark.parametrize(
    "family,values,x",
    [
        (Family.CH, (0.4 + 0.2j, 0.3, -0.7, 1.1, 0.2j), 0.6),
        (Family.BC, (0.5, -1.2 + 0.3j, 0.4, 0.8), 1.3),
        (Family.DC, (0.6, -0.3, 1.2j, 0.5), -0.7),
        (Family.TC, (1.0, -0.5, 0.3 + 0.3j), 1.4),
    ],
)
def test_jets_have_zero_residual(family, values, x):
    j = heun_jet(canonical_solution(family, ParamSet(family, values)), x, 3)
    assert abs(ode_residual(family, ParamSet(family, values), j)) < 1e-11


def test_constant_is_not_a_toy_solution():
    assert abs(ode_residual(Family.CH, TOY, Jet.constant(1.0, 0.5, 2))) > 0.1


def test_series_agrees_with_rk_integration():
    sol = canonical_solution(Family.CH, TOY)
    y, dy = continue_solution(Family.CH, TOY, 0.0, (1, 1), 0.5)
    assert y == pytest.approx(heun_eval(sol, 0.5)[0], rel=1e-9)
    assert dy == pytest.approx(heun_eval(sol, 0.5)[1], rel=1e-9)


def test_rk_integration_trivial_cases():
    tc = ParamSet(Family.TC, (0, 3, 0))
    y, dy = continue_solution(Family.TC, tc, 0.0, (1, 0), 1.2)
    assert y == pytest.approx(1, abs=1e-12) and abs(dy) < 1e-12
    assert continue_solution(Family.CH, TOY, 0.2, (0, 0), 0.7) == (0, 0)
    with pytest.raises(DomainError):
        continue_solution(Family.CH, TOY, 0.5, (1, 0), 1.5)


def test_arbitrary_seed_solution():
    p = ParamSet(Family.DC, (0.2, 1.0, -0.5, 0.3))
    sol = Solution.from_seeds(Family.DC, p, 0.25, 0.7 + 0.1j, -0.4)
    assert heun_eval(sol, 0.25) == pytest.approx((0.7 + 0.1j, -0.4))
    ys, _ = continue_solution(Family.DC, p, 0.25, (0.7 + 0.1j, -0.4), [-0.75, 0.8])
    assert [heun_eval(sol, x)[0] for x in (-0.75, 0.8)] == pytest.approx(list(ys), rel=1e-9)
    assert not sol.is_canonical
    assert canonical_solution(Family.DC, p).is_canonical


def test_blocked_paths_and_singular_anchor():
    sol = canonical_solution(Family.CH, TOY)
    with pytest.raises(DomainError):
        heun_eval(sol, 1.2)
    with pytest.raises(DomainError):
        Solution.from_seeds(Family.CH, TOY, 1.0, 1, 0)
    with pytest.raises(ValueError):
        Solution(Family.CH, TOY, anchor=0.5)


def test_resonant_recurrence_reports_index():
    p = ParamSet(Family.CH, (0, -1, 0, 0.5, 0.5))
    with pytest.raises(ResonanceError) as info:
        Solution.canonical(Family.CH, p)
    assert info.value.index == 1


def test_taylor_budget():
    p = ParamSet(Family.CH, (0, 0, 0, 0, 1))
    with pytest.raises(ConvergenceError):
        taylor_coeffs(ode_from_family(Family.CH, p), seeds_for(Family.CH, p), None, reach=0.999)
