"""Closed-form first derivatives of confluent and biconfluent Heun functions.

Each formula holds only on a parameter surface. The caller supplies the
dependent parameter already computed from the constraint; it is checked to
``CONSTRAINT_TOL`` absolute and rejected with :class:`ConstraintError`
otherwise.
"""

import enum

from . import jet as J
from .errors import ConstraintError, DomainError
from .series import Family, ParamSet, canonical_solution, heun_eval
from .special import hyp1f1

CONSTRAINT_TOL = 1e-12


class FormulaId(str, enum.Enum):
    DHC_AT0 = "DHC_AT0"
    DHC_CASE1 = "DHC_CASE1"
    DHC_CASE2 = "DHC_CASE2"
    DHB_AT0 = "DHB_AT0"
    DHB_HYP = "DHB_HYP"
    DHB_CASE = "DHB_CASE"


def _family(params, family):
    if params.family is not family:
        raise ValueError(f"expected {family.value} parameters, got {params.family.value}")


def _require(name, lhs, rhs):
    if abs(complex(lhs) - complex(rhs)) > CONSTRAINT_TOL:
        raise ConstraintError(f"{name} violated: {lhs} != {rhs}", case=name)


def _H(family, values, x):
    return heun_eval(canonical_solution(family, ParamSet(family, values)), x)[0]


def case1_delta(a, b, g):
    return -(b + g + 2) * a / 2


def case2_eta(a, b, g):
    return (b + 1) * a / 2 - (g + 1) * b / 2 - g / 2


def dHc_at0(params):
    """Initial slope of the canonical confluent solution."""
    _family(params, Family.CH)
    a, b, g, d, e = params.values
    if b == -1:
        raise DomainError("slope at 0 undefined for beta = -1")
    return ((1 + g - a) * b + g - a + 2 * e) / (2 * (1 + b))


def dHc_case1(params, x):
    """Derivative on the surface ``delta = -(beta + gamma + 2) alpha / 2``."""
    _family(params, Family.CH)
    a, b, g, d, e = params.values
    _require("case1: delta = -(beta+gamma+2)alpha/2", d, case1_delta(a, b, g))
    c = dHc_at0(params)
    w = (a, b + 1, g + 1, -(b + g) * a / 2, b / 2 + g / 2 - a / 2 + 0.5 + e)
    return c * _H(Family.CH, w, x)


def dHc_case2(params, x, s=-1):
    """Derivative on the surface ``eta = (beta+1)alpha/2 - (gamma+1)beta/2 - gamma/2``.

    ``s`` is ``-1`` or ``-1 - beta`` (the latter needs ``Re(beta) < -1``);
    ``x**s`` is taken on the principal branch.
    """
    _family(params, Family.CH)
    a, b, g, d, e = params.values
    _require("case2: eta = (beta+1)alpha/2-(gamma+1)beta/2-gamma/2", e, case2_eta(a, b, g))
    s = complex(s)
    if abs(s + 1) > CONSTRAINT_TOL:
        _require("case2: s in {-1, -1-beta}", s, -1 - b)
        if not b.real < -1:
            raise ConstraintError("case2 with s = -1-beta needs Re(beta) < -1", case="case2: Re(beta) < -1")
    if complex(x) == 0:
        raise DomainError("case2 formula is singular at x = 0")
    w = (a, 2 * s + b, g + 1, a / 2 + d, (a - g) * b / 2 + a / 2 - g / 2 + 0.5)
    return J.power(complex(x), s) * _H(Family.CH, w, x)


def dHb_at0(params):
    """Initial slope of the canonical biconfluent solution."""
    _family(params, Family.BC)
    a, b, g, d = params.values
    if a == -1:
        raise DomainError("slope at 0 undefined for alpha = -1")
    return (d + b * (a + 1)) / (2 * (1 + a))


def dHb_hyp(alpha, gamma, x):
    """Derivative of ``H_b(alpha, 0, gamma, 0; x)`` through Kummer's function."""
    alpha, gamma = complex(alpha), complex(gamma)
    if alpha == -2:
        raise DomainError("formula undefined for alpha = -2")
    return (alpha + 2 - gamma) * x / (alpha + 2) * hyp1f1((alpha + 6 - gamma) / 4, 2 + alpha / 2, x * x)


def dHb_case(params, x):
    """Derivative on the surface ``gamma = alpha + 2``."""
    _family(params, Family.BC)
    a, b, g, d = params.values
    _require("gamma = alpha+2", g, a + 2)
    c = dHb_at0(params)
    return c * _H(Family.BC, (a + 1, b, a - 1, b + d), x)
