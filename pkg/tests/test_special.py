import cmath

import pytest
import scipy.special as sc

from heunint.errors import ConvergenceError, DomainError
from heunint.jet import Jet
from heunint.special import SpecialFnConfig, bessel, erfi, hyp1f1, hyp2f1, inc_gamma_upper_one_third

Z = [0.3, 1.7, -2.2, 0.8 + 0.9j, -1.1 - 0.4j]


@pytest.mark.parametrize("z", [0.2, -0.7, 0.5 + 0.3j, -0.4 - 0.6j])
def test_hyp2f1_against_scipy(z):
    a, b, c = 0.3, -1.2, 1.7
    assert hyp2f1(a, b, c, z) == pytest.approx(sc.hyp2f1(a, b, c, z), rel=1e-13)


@pytest.mark.parametrize("z", [0.5, -3.0, 3.9])
def test_hyp1f1_against_scipy(z):
    assert hyp1f1(0.7, 1.3, z) == pytest.approx(sc.hyp1f1(0.7, 1.3, z), rel=1e-13)


@pytest.mark.parametrize("z", Z)
@pytest.mark.parametrize("n", [0, 1])
def test_bessel_against_scipy(n, z):
    assert bessel("J", n, z) == pytest.approx(sc.jv(n, z), rel=1e-13, abs=1e-15)
    assert bessel("Y", n, z) == pytest.approx(sc.yv(n, complex(z)), rel=1e-12)


def test_bessel_jet_derivative():
    x = 1.3
    J0 = bessel("J", 0, Jet.variable(x, 2))
    assert J0.derivative(1) == pytest.approx(-sc.jv(1, x), rel=1e-13)
    Y1 = bessel("Y", 1, Jet.variable(x, 1))
    assert Y1.derivative(1) == pytest.approx(sc.yvp(1, x), rel=1e-12)


@pytest.mark.parametrize("z", [0.4, -1.5, 2.5])
def test_erfi_against_scipy(z):
    assert erfi(z) == pytest.approx(sc.erfi(z), rel=1e-13)


def test_erfi_jet_derivative_is_gaussian():
    x = 0.9
    assert erfi(Jet.variable(x, 1)).derivative(1) == pytest.approx(2 / cmath.sqrt(cmath.pi) * cmath.exp(x * x))


@pytest.mark.parametrize("w", [0.3, 2.0, 4.5])
def test_upper_incomplete_gamma_against_scipy(w):
    ref = sc.gammaincc(1 / 3, w) * sc.gamma(1 / 3)
    assert inc_gamma_upper_one_third(w) == pytest.approx(ref, rel=1e-12)


def test_upper_incomplete_gamma_negative_argument_derivative():
    # d/dw Gamma(1/3, w) = -w^(-2/3) e^(-w), principal branch
    w = -0.8
    d = inc_gamma_upper_one_third(Jet.variable(w, 1)).derivative(1)
    assert d == pytest.approx(-cmath.exp(-2 / 3 * cmath.log(w)) * cmath.exp(-w), rel=1e-12)


def test_domain_guards():
    with pytest.raises(DomainError):
        hyp1f1(1, -2, 0.1)
    with pytest.raises(DomainError):
        hyp2f1(1, 1, 0, 0.1)
    with pytest.raises(DomainError):
        hyp2f1(1, 1, 2, 0.95)
    with pytest.raises(DomainError):
        bessel("Y", 0, 0.0)
    with pytest.raises(ConvergenceError):
        erfi(7.0)
    with pytest.raises(DomainError):
        inc_gamma_upper_one_third(Jet.variable(0.0, 1))
    with pytest.raises(ValueError):
        bessel("J", 2, 0.5)


def test_config_validation_and_budget():
    with pytest.raises(ValueError):
        SpecialFnConfig(series_tol=0)
    with pytest.raises(ConvergenceError):
        hyp2f1(1, 1, 1, 0.89, config=SpecialFnConfig(max_terms=20))
