import math

import pytest

from heunint.errors import ConvergenceError
from heunint.quad import integrate_adaptive


def test_sine_over_half_period():
    r = integrate_adaptive(math.sin, 0, math.pi, tol=1e-12)
    assert r.value == pytest.approx(2.0, abs=1e-11)
    assert r.evaluations > 3


def test_complex_integrand():
    r = integrate_adaptive(lambda t: complex(math.cos(t), t * t), 0.0, 1.0, tol=1e-12)
    assert r.value == pytest.approx(complex(math.sin(1.0), 1 / 3), abs=1e-11)


def test_degenerate_and_reversed_intervals():
    assert integrate_adaptive(math.exp, 0.5, 0.5).value == 0
    fwd = integrate_adaptive(math.exp, 0.0, 1.0, tol=1e-12).value
    back = integrate_adaptive(math.exp, 1.0, 0.0, tol=1e-12).value
    assert back == pytest.approx(-fwd)
    assert fwd == pytest.approx(math.e - 1, abs=1e-11)


def test_unresolved_panel_raises_with_best_estimate():
    with pytest.raises(ConvergenceError) as info:
        integrate_adaptive(lambda t: 1 / math.sqrt(t) if t > 0 else 0.0, 0.0, 1.0, tol=1e-14, max_depth=6)
    assert info.value.best is not None


def test_bad_tolerance():
    with pytest.raises(ValueError):
        integrate_adaptive(math.sin, 0, 1, tol=0)
