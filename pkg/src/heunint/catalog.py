"""Indefinite integrals of confluent Heun functions, stored as data.

Every entry supplies an integrand ``I(x)`` and an antiderivative ``F(x)``
(constant of integration zero) such that ``F' = I``. All of them come from
one mechanism: for any twice differentiable ``h`` and any solution ``y`` of
``y'' + p y' + q y = 0``,

    d/dx [ f (y h' - h y') ] = f (h'' + p h' + q h) y,     f = exp(int p).

:func:`lagrangian_pair` and :func:`conjugate_pair` implement that mechanism
for an arbitrary ``h``; the entries spell out particular choices of ``h``
(elementary, hypergeometric, Bessel, error function, incomplete gamma,
solutions of reduced first-order equations, conjugate-equation solutions).

Formulas are written with the scalar/jet helpers of :mod:`heunint.jet`, so
``antiderivative(inst, Jet.variable(x0, n))`` yields the exact derivative of
``F`` at ``x0``.

Branches: factors ``(x - s)**c`` are evaluated as ``exp(c * L(x, s))`` where
``L`` is the principal logarithm, except that for real ``x < s`` the
imaginary part is ``branch * pi`` (``branch`` = +1 by default, -1 flips it).
Quadratics are split into linear factors before taking logarithms so that
``h`` stays continuous along the real axis for complex parameters.
"""

import cmath
import enum
import math
from dataclasses import dataclass, field

from . import jet as J
from .errors import ConstraintError, DomainError, InvalidInstance
from .jet import Jet
from .series import (
    Family,
    ParamSet,
    Solution,
    canonical_solution,
    heun_eval,
    heun_jet,
    ode_from_family,
)
from .special import bessel, erfi, hyp2f1, inc_gamma_upper_one_third

ZERO_TOL = 1e-12
DOMAIN_MARGIN = 0.1
MIN_DOMAIN = 0.3
NEAR_REAL = 0.1

DEFAULT_DOMAINS = {
    Family.CH: (0.05, 0.85),
    Family.BC: (0.1, 2.0),
    Family.DC: (-0.8, 0.8),
    Family.TC: (-1.5, 1.5),
}

# parameters entering p; conjugate equations must share them
P_PARAMS = {
    Family.CH: ("alpha", "beta", "gamma"),
    Family.BC: ("alpha", "beta"),
    Family.DC: ("alpha",),
    Family.TC: ("gamma",),
}


class IdentityId(str, enum.Enum):
    CH_ELEM = "CH_ELEM"
    CH_ZERO = "CH_ZERO"
    CH_ZERO_DER1 = "CH_ZERO_DER1"
    CH_STANJEL = "CH_STANJEL"
    CH_HYP = "CH_HYP"
    CH_H3 = "CH_H3"
    CH_BESSEL = "CH_BESSEL"
    CH_CONJ = "CH_CONJ"
    BC_ELEM = "BC_ELEM"
    BC_ZERO = "BC_ZERO"
    BC_ZERO_SPC = "BC_ZERO_SPC"
    BC_ERFI = "BC_ERFI"
    BC_H3 = "BC_H3"
    BC_CONJ = "BC_CONJ"
    DC_ELEM = "DC_ELEM"
    DC_ZERO = "DC_ZERO"
    DC_LOG = "DC_LOG"
    DC_H3 = "DC_H3"
    DC_CONJ = "DC_CONJ"
    TC_ELEM = "TC_ELEM"
    TC_GAMMA = "TC_GAMMA"
    TC_H3 = "TC_H3"
    TC_CONJ = "TC_CONJ"


@dataclass(frozen=True)
class HChoice:
    """``h = x**m * exp(rho * x**ell) * trig(k x)`` for the elementary entries."""

    m: int = 0
    ell: int = 0
    rho: complex = 0j
    k: complex = 1 + 0j
    trig: str = "sin"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0 or int(self.ell) != self.ell or self.ell < 0:
            raise ValueError("m and ell must be non-negative integers")
        if self.trig not in ("sin", "cos"):
            raise ValueError("trig must be 'sin' or 'cos'")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "ell", int(self.ell))
        object.__setattr__(self, "rho", complex(self.rho))
        object.__setattr__(self, "k", complex(self.k))


@dataclass(frozen=True)
class SeedMode:
    """How the Heun solution(s) inside an identity are fixed.

    ``canonical``: the normalized local solution(s) at the origin.
    ``arbitrary``: value ``y0`` and slope ``y1`` at ``anchor`` (the anchor
    defaults to the domain midpoint); conjugate entries use ``h0, h1`` for
    the second solution.
    """

    kind: str = "canonical"
    y0: complex = 1 + 0j
    y1: complex = 0j
    anchor: float = None
    h0: complex = 1 + 0j
    h1: complex = 0j

    @classmethod
    def arbitrary(cls, y0, y1, anchor=None, h0=1.0, h1=0.0):
        return cls("arbitrary", complex(y0), complex(y1), anchor, complex(h0), complex(h1))

    @property
    def is_canonical(self):
        return self.kind == "canonical"


CANONICAL = SeedMode()


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    violations: tuple = ()
    notes: tuple = ()
    case: str = None
    domain: tuple = None

    @property
    def resonant(self):
        return "resonant" in self.notes


# -- branch-aware elementary pieces --------------------------------------------


def log_shift(x, s, branch=1):
    """``log(x - s)`` with the branch convention described in the module docstring."""
    d = x - s
    d0 = J.value(d)
    if d0.imag == 0.0 and d0.real < 0.0:
        return J.log(-d) + branch * 1j * math.pi
    return J.log(d)


def power_shift(x, s, c, branch=1):
    """``(x - s)**c`` consistent with :func:`log_shift`."""
    if isinstance(c, int):
        return (x - s) ** c
    return J.exp(c * log_shift(x, s, branch))


def _roots2(a, b, c):
    """Roots of ``a x^2 + b x + c`` (``a != 0``)."""
    disc = cmath.sqrt(b * b - 4 * a * c)
    return (-b + disc) / (2 * a), (-b - disc) / (2 * a)


def family_f(family, params, x, branch=1):
    """``exp(int p)`` in closed form."""
    family = Family(family)
    if family is Family.CH:
        a, b, g, d, e = params.values
        return J.exp((1 + b) * log_shift(x, 0.0, branch) + (1 + g) * log_shift(x, 1.0, branch) + a * x)
    if family is Family.BC:
        a, b, g, d = params.values
        return J.exp((a + 1) * log_shift(x, 0.0, branch) - x * x - b * x)
    if family is Family.DC:
        a = params.alpha
        u = x * x - 1
        return u * J.exp(a * x / u)
    g = params.gamma
    return J.exp(-x * x * x - g * x)


# -- generic constructions ----------------------------------------------------


def _values(sol, x):
    """``(y, y')`` as numbers, or as jets matching the order of ``x``."""
    if isinstance(x, Jet):
        Y = heun_jet(sol, x.x0.real, x.order + 1)
        return Y.truncate(x.order), Y.deriv()
    return heun_eval(sol, complex(x))


def lagrangian_pair(family, params, h, x, solution=None, branch=1):
    """``(I, F)`` for an arbitrary auxiliary function ``h`` at the real point ``x``.

    ``h`` maps a jet to a jet; only its first three coefficients are used.
    ``I = f (h'' + p h' + q h) y`` and ``F = f (y h' - h y')`` with ``y`` the
    canonical solution unless ``solution`` is given.
    """
    family = Family(family)
    sol = solution if solution is not None else canonical_solution(family, params)
    ode = ode_from_family(family, params)
    X = Jet.variable(complex(x), 2)
    Hj = h(X)
    h0, h1, h2 = Hj.coeffs[0], Hj.coeffs[1], 2.0 * Hj.coeffs[2]
    y, dy = heun_eval(sol, x)
    f = family_f(family, params, complex(x), branch)
    I = f * (h2 + ode.p(x) * h1 + ode.q(x) * h0) * y
    F = f * (y * h1 - h0 * dy)
    return complex(I), complex(F)


def conjugate_pair(family, params, params_bar, x, solution=None, solution_bar=None, branch=1):
    """``(I, F)`` for two solutions of equations sharing ``p``.

    ``y`` solves the equation with ``params`` and ``h`` the one with
    ``params_bar``; ``I = f (q - qbar) h y`` and ``F = f (h' y - h y')``.
    """
    family = Family(family)
    if params.family is not family or params_bar.family is not family:
        raise ValueError("parameter sets must belong to the requested family")
    for name in P_PARAMS[family]:
        if abs(getattr(params, name) - getattr(params_bar, name)) > ZERO_TOL:
            raise ConstraintError(
                f"not a conjugate pair: {name} enters p and must agree", case=f"same {name}"
            )
    sol = solution if solution is not None else canonical_solution(family, params)
    sol_bar = solution_bar if solution_bar is not None else canonical_solution(family, params_bar)
    y, dy = heun_eval(sol, x)
    h, dh = heun_eval(sol_bar, x)
    ode, ode_bar = ode_from_family(family, params), ode_from_family(family, params_bar)
    f = family_f(family, params, complex(x), branch)
    I = f * (ode.q(x) - ode_bar.q(x)) * h * y
    F = f * (dh * y - h * dy)
    return complex(I), complex(F)


# -- instances -----------------------------------------------------------------


@dataclass(frozen=True)
class IdentityInstance:
    """One catalog identity bound to parameters, ``h`` choice, branch and domain."""

    id: IdentityId
    family: Family
    params: ParamSet
    hchoice: HChoice
    domain: tuple
    seed_mode: SeedMode
    branch: int = 1
    variant: str = "J"
    case: str = None
    _sols: dict = field(default=None, compare=False, repr=False)

    def solution(self, role="y"):
        return self._sols[role]


def _y(inst, x):
    return _values(inst._sols["y"], x)


def _ybar(inst, x):
    return _values(inst._sols["bar"], x)


def _w(inst, x):
    return _values(inst._sols["w"], x)[0]


def _xpow(x, c, inst):
    if isinstance(c, int):
        return x**c
    return J.exp(c * log_shift(x, 0.0, inst.branch))


def _poly(coeffs, x):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _trig(hc, x):
    kx = hc.k * x
    return J.sin(kx), J.cos(kx)


def _elem_h(inst, x, scale=1.0):
    hc = inst.hchoice
    s, c = _trig(hc, x)
    t = s if hc.trig == "sin" else c
    return scale * x**hc.m * J.exp(hc.rho * x**hc.ell) * t


def _elem_combine(hc, x, P1, P2, y, dy, c1=1.0):
    """Shared bracket structure of the elementary entries: (integrand bracket, F bracket)."""
    s, c = _trig(hc, x)
    rl = hc.rho * hc.ell * x**hc.ell
    q = (hc.m + rl) * y - x * dy
    if hc.trig == "sin":
        return c1 * x * P1 * c + P2 * s, q * s + hc.k * x * c * y
    return P2 * c - c1 * x * P1 * s, q * c - hc.k * x * s * y


# CH --------------------------------------------------------------------------


def _ch_MN(params):
    a, b, g, d, e = params.values
    M = (b + g + 2) * a + 2 * d
    N = -(b + 1) * a + (g + 1) * b + 2 * e + g
    return M, N


def _ch_pre(inst, x):
    """``x^beta (x-1)^gamma e^(alpha x)``."""
    a, b, g, d, e = inst.params.values
    br = inst.branch
    return J.exp(b * log_shift(x, 0.0, br) + g * log_shift(x, 1.0, br) + a * x)


def _ch_f(inst, x):
    return family_f(Family.CH, inst.params, x, inst.branch)


def _ch_elem_P(inst, x):
    a, b, g, d, e = inst.params.values
    hc = inst.hchoice
    m, l, rho, k = hc.m, hc.ell, hc.rho, hc.k
    a_ = (-b - 2 * m - 1, b + g - a + 2 * m + 2, a)
    b_ = (
        -2 * m * (m + b),
        2 * m * m + 2 * (g - a + b + 1) * m + (1 + b) * (g - a) + b + 2 * e,
        (b + g + 2 * m + 2) * a + 2 * k * k + 2 * d,
        -2 * k * k,
    )
    c_ = (-l - b - 2 * m, l + b + g - a + 2 * m + 1, a)
    rl = rho * l * x**l
    P1 = k * _poly(a_, x) + 2 * k * rl * (x - 1)
    P2 = _poly(b_, x) + 2 * rl * (_poly(c_, x) + rl * (x - 1))
    return P1, P2


def _ch_elem_I(inst, x):
    a, b, g, d, e = inst.params.values
    hc = inst.hchoice
    y, dy = _y(inst, x)
    P1, P2 = _ch_elem_P(inst, x)
    br, _ = _elem_combine(hc, x, P1, P2, y, dy, c1=2.0)
    pre = J.exp((b + hc.m - 1) * log_shift(x, 0.0, inst.branch) + g * log_shift(x, 1.0, inst.branch)
                + a * x + hc.rho * x**hc.ell)
    return pre * br * y


def _ch_elem_F(inst, x):
    a, b, g, d, e = inst.params.values
    hc = inst.hchoice
    y, dy = _y(inst, x)
    _, G = _elem_combine(hc, x, 0.0, 0.0, y, dy)
    pre = J.exp((b + hc.m) * log_shift(x, 0.0, inst.branch) + (1 + g) * log_shift(x, 1.0, inst.branch)
                + a * x + hc.rho * x**hc.ell)
    return 2 * pre * G


def _ch_zero_I(inst, x):
    M, N = _ch_MN(inst.params)
    return _ch_pre(inst, x) * (M * x + N) * _y(inst, x)[0]


def _ch_zero_F(inst, x):
    return -2 * _ch_f(inst, x) * _y(inst, x)[1]


def _ch_der1_I(inst, x):
    return _ch_pre(inst, x) * _y(inst, x)[0]


def _ch_der1_F(inst, x):
    b = inst.params.beta
    return -_ch_f(inst, x) * _w(inst, x) / (1 + b)


def _ch_stanjel_I(inst, x):
    return _y(inst, x)[0]


def _ch_stanjel_F(inst, x):
    return (1 - x) / inst.params.delta * _y(inst, x)[1]


def _ch_hyp_G(inst, x):
    a, b, g, d, e = inst.params.values
    return hyp2f1(-b, 1 + g, 1 - b, x)


def _ch_hyp_I(inst, x):
    a, b, g, d, e = inst.params.values
    U = 2 * d * x + (g + 1) * b + 2 * e + g
    return power_shift(x, 1.0, g, inst.branch) * U * _ch_hyp_G(inst, x) * _y(inst, x)[0]


def _ch_hyp_F(inst, x):
    a, b, g, d, e = inst.params.values
    G = _ch_hyp_G(inst, x)
    frak_h = b * ((1 + g) / (b - 1) * x * hyp2f1(1 - b, 2 + g, 2 - b, x) - G)
    y, dy = _y(inst, x)
    return 2 * power_shift(x, 1.0, 1 + g, inst.branch) * (frak_h * y - x * G * dy)


def _ch_hyp_h(inst, x):
    b = inst.params.beta
    return 2 * _xpow(x, -b, inst) * _ch_hyp_G(inst, x)


def _ch_h3_coeffs(params):
    a, b, g, d, e = params.values
    M, N = _ch_MN(params)
    C = 2 * a
    B = b + g + 2 - a
    A = -2 * (b + 1)
    return M, N, A, B, C, A * C - B * B


def _ch_h3_case(params):
    M, N, A, B, C, D = _ch_h3_coeffs(params)
    if abs(D) <= ZERO_TOL:
        return "delta=0"
    if params.is_real and D.real > 0:
        return "delta>0"
    return "delta<0"


def _ch_h3_h(inst, x):
    M, N, A, B, C, D = _ch_h3_coeffs(inst.params)
    br = inst.branch
    if inst.case == "delta>0":
        sD = cmath.sqrt(D)
        Q = C * x * x + 2 * B * x + A
        return J.power(Q, -M / (2 * C)) * J.exp((M * B - N * C) / (C * sD) * J.arctan((C * x + B) / sD))
    if inst.case == "delta=0":
        x0 = -B / C
        return J.exp(-M / C * (cmath.log(C) + log_shift(x, x0, br))) * J.exp((N * C - M * B) / (C * (C * x + B)))
    sD = cmath.sqrt(-D)
    rp, rm = (-B + sD) / C, (-B - sD) / C
    Lp, Lm = log_shift(x, rp, br), log_shift(x, rm, br)
    E = (M * B - N * C) / (2 * C * sD)
    return J.exp(-M / (2 * C) * (cmath.log(C) + Lp + Lm) + E * (Lp - Lm))


def _ch_h3_I(inst, x):
    M, N, A, B, C, D = _ch_h3_coeffs(inst.params)
    Q = C * x * x + 2 * B * x + A
    u = (M * (C + M) * x * x + 2 * N * (C + M) * x + N * N + 2 * B * N - A * M) / (Q * Q)
    return _ch_f(inst, x) * u * _ch_h3_h(inst, x) * _y(inst, x)[0]


def _ch_h3_F(inst, x):
    M, N, A, B, C, D = _ch_h3_coeffs(inst.params)
    Q = C * x * x + 2 * B * x + A
    y, dy = _y(inst, x)
    return -_ch_f(inst, x) * _ch_h3_h(inst, x) * ((M * x + N) / Q * y + dy)


def _ch_omega(params):
    a, b, g, d, e = params.values
    return cmath.sqrt(2 * a * (b + g + 2) + 4 * d)


def _ch_bessel_parts(inst, x):
    om = _ch_omega(inst.params)
    s = J.exp(0.5 * log_shift(x, 1.0, inst.branch))
    z = om * s
    return om, s, bessel(inst.variant, 0, z), bessel(inst.variant, 1, z)


def _ch_bessel_I(inst, x):
    a, b, g, d, e = inst.params.values
    om, s, Z0, Z1 = _ch_bessel_parts(inst, x)
    K = a * x * x + (2 + b + g - a) * x - b - 1
    return _ch_pre(inst, x) * K * Z0 * _y(inst, x)[0]


def _ch_bessel_F(inst, x):
    om, s, Z0, Z1 = _ch_bessel_parts(inst, x)
    y, dy = _y(inst, x)
    return _ch_f(inst, x) * (Z0 * y - 2 / om * s * Z1 * dy)


def _ch_bessel_h(inst, x):
    om, s, Z0, Z1 = _ch_bessel_parts(inst, x)
    return 2 / om * s * Z1


def _ch_conj_I(inst, x):
    return _ch_pre(inst, x) * _y(inst, x)[0] * _ybar(inst, x)[0]


def _ch_conj_F(inst, x):
    e = inst.params.eta
    y, dy = _y(inst, x)
    h, dh = _ybar(inst, x)
    return _ch_f(inst, x) / (2 * e) * (dh * y - h * dy)


# BC --------------------------------------------------------------------------


def _bc_e(inst, x):
    b = inst.params.beta
    return J.exp(-x * x - b * x)


def _bc_A(params):
    a, b, g, d = params.values
    return 2 * (g - a - 2), d + b * (a + 1)


def _bc_elem_P(inst, x):
    a, b, g, d = inst.params.values
    hc = inst.hchoice
    m, l, rho, k = hc.m, hc.ell, hc.rho, hc.k
    a_ = (1 + 2 * m + a, -b, -2)
    b_ = (m * (m + a), -(b * (a + 2 * m + 1) + d) / 2, -k * k - a + g - 2 * m - 2)
    c_ = (l + a + 2 * m, -b, -2)
    rl = rho * l * x**l
    P1 = k * _poly(a_, x) + 2 * k * rl
    P2 = _poly(b_, x) + rl * (_poly(c_, x) + rl)
    return P1, P2


def _bc_elem_I(inst, x):
    a, b, g, d = inst.params.values
    hc = inst.hchoice
    y, dy = _y(inst, x)
    P1, P2 = _bc_elem_P(inst, x)
    br, _ = _elem_combine(hc, x, P1, P2, y, dy)
    pre = J.exp((a + hc.m - 1) * log_shift(x, 0.0, inst.branch) - x * x - b * x + hc.rho * x**hc.ell)
    return pre * br * y


def _bc_elem_F(inst, x):
    a, b, g, d = inst.params.values
    hc = inst.hchoice
    y, dy = _y(inst, x)
    _, G = _elem_combine(hc, x, 0.0, 0.0, y, dy)
    pre = J.exp((a + hc.m) * log_shift(x, 0.0, inst.branch) - x * x - b * x + hc.rho * x**hc.ell)
    return pre * G


def _bc_zero_I(inst, x):
    a = inst.params.alpha
    A1, A2 = _bc_A(inst.params)
    return _xpow(x, a, inst) * (A1 * x - A2) * _bc_e(inst, x) * _y(inst, x)[0]


def _bc_zero_F(inst, x):
    return -2 * family_f(Family.BC, inst.params, x, inst.branch) * _y(inst, x)[1]


def _bc_spc_I(inst, x):
    a = inst.params.alpha
    return _xpow(x, a, inst) * _bc_e(inst, x) * _y(inst, x)[0]


def _bc_spc_F(inst, x):
    a = inst.params.alpha
    return _xpow(x, a + 1, inst) / (a + 1) * _bc_e(inst, x) * _w(inst, x)


def _bc_erfi_I(inst, x):
    a, b, g, d = inst.params.values
    return _bc_e(inst, x) * (g - 1 - d / (2 * x)) * erfi(x + b / 2) * _y(inst, x)[0]


def _bc_erfi_F(inst, x):
    b = inst.params.beta
    y, dy = _y(inst, x)
    return 2 * cmath.exp(b * b / 4) / math.sqrt(math.pi) * y - _bc_e(inst, x) * erfi(x + b / 2) * dy


def _bc_erfi_h(inst, x):
    return erfi(x + inst.params.beta / 2)


def _bc_h3_delta(params):
    a, b, g, d = params.values
    return -2 * (a + 1) - b * b / 4


def _bc_h3_case(params):
    D = _bc_h3_delta(params)
    if abs(D) <= ZERO_TOL:
        return "delta=0"
    if params.is_real and D.real > 0:
        return "delta>0"
    return "delta<0"


def _bc_h3_h(inst, x):
    a, b, g, d = inst.params.values
    D = _bc_h3_delta(inst.params)
    br = inst.branch
    c = (g - a - 2) / 4
    if inst.case == "delta>0":
        sD = cmath.sqrt(D)
        P = 2 * x * x + b * x - a - 1
        return J.power(P, c) * J.exp(-(2 * d + b * (a + g)) / (4 * sD) * J.arctan((4 * x + b) / (2 * sD)))
    if inst.case == "delta=0":
        return J.exp(2 * c * log_shift(x, -b / 4, br)) * J.exp((b * (g + a) + 2 * d) / (2 * (4 * x + b)))
    sD = cmath.sqrt(-D)
    rp, rm = (-b + 2 * sD) / 4, (-b - 2 * sD) / 4
    Lp, Lm = log_shift(x, rp, br), log_shift(x, rm, br)
    E = (2 * d + b * (a + g)) / (8 * sD)
    return J.exp(c * (math.log(2.0) + Lp + Lm) + E * (Lm - Lp))


def _bc_h3_SU(inst, x):
    a, b, g, d = inst.params.values
    P = 2 * x * x + b * x - a - 1
    A2 = 4 * ((a - g) ** 2 + 2 * (3 * a - 3 * g + 4))
    A1 = 4 * (a * b * (a - g + 5) + a * d + (b + d) * (4 - g))
    A0 = a * b * (a * b + 4 * b + 2 * d) + d * d + 3 * b * b + 4 * (a * a + b * d - a * g + 3 * a - g + 2)
    U = (A2 * x * x + A1 * x + A0) / (P * P)
    S = (2 * (g - a - 2) * x - b * (a + 1) - d) / P
    return S, U


def _bc_h3_I(inst, x):
    S, U = _bc_h3_SU(inst, x)
    return family_f(Family.BC, inst.params, x, inst.branch) * U * _bc_h3_h(inst, x) * _y(inst, x)[0]


def _bc_h3_F(inst, x):
    S, U = _bc_h3_SU(inst, x)
    y, dy = _y(inst, x)
    return 2 * family_f(Family.BC, inst.params, x, inst.branch) * _bc_h3_h(inst, x) * (S * y - 2 * dy)


def _bc_conj_I(inst, x):
    a, b, g, d = inst.params.values
    return _xpow(x, a, inst) * (2 * g * x - d) * _bc_e(inst, x) * _y(inst, x)[0] * _ybar(inst, x)[0]


def _bc_conj_F(inst, x):
    y, dy = _y(inst, x)
    h, dh = _ybar(inst, x)
    return family_f(Family.BC, inst.params, x, inst.branch) * (y * dh - dy * h)


# DC --------------------------------------------------------------------------


def _dc_E(inst, x):
    return J.exp(inst.params.alpha * x / (x * x - 1))


def _dc_elem_P(inst, x, printed=False):
    a, b, g, d = inst.params.values
    hc = inst.hchoice
    m, l, rho, k = hc.m, hc.ell, hc.rho, hc.k
    a_ = (-2 * m, a, 6 * m + 2, 0, -6 * m - 4, -a, 2 * m + 2)
    b6 = 3 * k * k + m * m + m
    b4 = b - b6 if printed else b - 3 * k * k - 3 * m * m - m
    b_ = (m - m * m, a * m, k * k + 3 * m * m - m + d, g + 2 * a, b4, -a * m, b6, 0, -k * k)
    c6 = l + 2 * m + 1
    c_ = (2 - c6, a, 3 * c6 - 4, 0, 2 - 3 * c6, -a, c6)
    rl = rho * l * x**l
    cube = (x * x - 1) ** 3
    P1 = k * _poly(a_, x) + 2 * k * rl * cube
    P2 = _poly(b_, x) + rl * (_poly(c_, x) + rl * cube)
    return P1, P2


def dc_elem_integrand(inst, x, printed=False):
    """DC_ELEM integrand; ``printed=True`` uses the x^4 coefficient exactly as originally typeset."""
    hc = inst.hchoice
    y, dy = _y(inst, x)
    P1, P2 = _dc_elem_P(inst, x, printed)
    br, _ = _elem_combine(hc, x, P1, P2, y, dy)
    u = x * x - 1
    return x ** (hc.m - 2) * _dc_E(inst, x) * J.exp(hc.rho * x**hc.ell) / (u * u) * br * y


def _dc_elem_I(inst, x):
    return dc_elem_integrand(inst, x)


def _dc_elem_F(inst, x):
    hc = inst.hchoice
    y, dy = _y(inst, x)
    _, G = _elem_combine(hc, x, 0.0, 0.0, y, dy)
    return x ** (hc.m - 1) * (x * x - 1) * _dc_E(inst, x) * J.exp(hc.rho * x**hc.ell) * G


def _dc_zero_I(inst, x):
    a, b, g, d = inst.params.values
    u = x * x - 1
    return _dc_E(inst, x) / (u * u) * (b * x * x + (g + 2 * a) * x + d) * _y(inst, x)[0]


def _dc_zero_F(inst, x):
    return -(x * x - 1) * _dc_E(inst, x) * _y(inst, x)[1]


def _dc_log_h(inst, x):
    return 0.5 * (log_shift(x, 1.0, inst.branch) - log_shift(x, -1.0, inst.branch))


def _dc_log_I(inst, x):
    a, b, g, d = inst.params.values
    u = x * x - 1
    return (b * x * x + g * x + d) / (u * u) * _dc_log_h(inst, x) * _y(inst, x)[0]


def _dc_log_F(inst, x):
    y, dy = _y(inst, x)
    return y - (x * x - 1) * _dc_log_h(inst, x) * dy


def _dc_h3_parts(inst, x):
    """``h`` and the pieces of the printed integrand prefactor sharing its branches."""
    a, b, g, d = inst.params.values
    br = inst.branch
    px = J.exp(-d / 2 * log_shift(x, 0.0, br))
    pm = J.exp((2 * d + g) / 8 * log_shift(x, 1.0, br))
    pp = J.exp((2 * d - g) / 8 * log_shift(x, -1.0, br))
    ex = J.exp((g * x + b + d) / (4 * (x * x - 1)))
    return px, pm, pp, ex


def _dc_h3_h(inst, x):
    px, pm, pp, ex = _dc_h3_parts(inst, x)
    return px * pm * pp * ex


def _dc_h3_I(inst, x):
    a, b, g, d = inst.params.values
    px, pm, pp, ex = _dc_h3_parts(inst, x)
    U = _poly(
        (
            d * d + 2 * d,
            2 * g * d,
            2 * b * d + g * g - 2 * b - 12 * d,
            2 * g * (b - 4),
            b * b - 4 * b + 10 * d,
            8 * g,
            6 * b,
        ),
        x,
    )
    pre = x**-2 * px * pm * (x - 1) ** -3 * pp * (x + 1) ** -3 * ex
    return pre * U * _y(inst, x)[0]


def _dc_h3_F(inst, x):
    a, b, g, d = inst.params.values
    y, dy = _y(inst, x)
    u = x * x - 1
    return -_dc_h3_h(inst, x) * (2 * (b * x * x + g * x + d) / (x * u) * y + 4 * u * dy)


def _dc_conj_I(inst, x):
    u = x * x - 1
    return x / (u * u) * _dc_E(inst, x) * _y(inst, x)[0] * _ybar(inst, x)[0]


def _dc_conj_F(inst, x):
    g = inst.params.gamma
    y, dy = _y(inst, x)
    h, dh = _ybar(inst, x)
    return (x * x - 1) / (2 * g) * _dc_E(inst, x) * (y * dh - dy * h)


# TC --------------------------------------------------------------------------


def _tc_e(inst, x):
    return J.exp(-x * x * x - inst.params.gamma * x)


def _tc_elem_P(inst, x):
    a, b, g = inst.params.values
    hc = inst.hchoice
    m, l, rho, k = hc.m, hc.ell, hc.rho, hc.k
    rl = rho * l * x**l
    P1 = -k * (3 * x**3 + g * x - 2 * m) + 2 * k * rl
    s_ = (m * (m - 1), -g * m, a - k * k, b - 3 * m - 3)
    t_ = (l + 2 * m - 1, -g, 0, -3)
    P2 = _poly(s_, x) + rl * (_poly(t_, x) + rl)
    return P1, P2


def _tc_elem_I(inst, x):
    hc = inst.hchoice
    y, dy = _y(inst, x)
    P1, P2 = _tc_elem_P(inst, x)
    br, _ = _elem_combine(hc, x, P1, P2, y, dy)
    return x ** (hc.m - 2) * _tc_e(inst, x) * J.exp(hc.rho * x**hc.ell) * br * y


def _tc_elem_F(inst, x):
    hc = inst.hchoice
    y, dy = _y(inst, x)
    _, G = _elem_combine(hc, x, 0.0, 0.0, y, dy)
    return x ** (hc.m - 1) * _tc_e(inst, x) * J.exp(hc.rho * x**hc.ell) * G


def _tc_gamma_G(inst, x):
    return inc_gamma_upper_one_third(-(x * x * x))


def _tc_gamma_I(inst, x):
    a, b, g = inst.params.values
    return (a + (b - 3) * x) * J.exp(-x * x * x) * _tc_gamma_G(inst, x) * _y(inst, x)[0]


def _tc_gamma_F(inst, x):
    y, dy = _y(inst, x)
    w = -(x * x * x)
    return 3 * x * x / J.power(w, 2.0 / 3.0) * y - J.exp(w) * _tc_gamma_G(inst, x) * dy


def _tc_h3_case(params):
    g = params.gamma
    if abs(g) <= ZERO_TOL:
        return "gamma=0"
    if params.is_real and g.real > 0:
        return "gamma>0"
    return "gamma<0"


def _tc_h3_h(inst, x):
    a, b, g = inst.params.values
    br = inst.branch
    if inst.case == "gamma=0":
        return J.exp((b - 3) / 3 * log_shift(x, 0.0, br) - a / (3 * x))
    if inst.case == "gamma>0":
        sg = cmath.sqrt(g)
        return J.power(3 * x * x + g, (b - 3) / 6) * J.exp(
            a / cmath.sqrt(3 * g) * J.arctan(math.sqrt(3.0) * x / sg)
        )
    s = cmath.sqrt(-3 * g)
    rp, rm = s / 3, -s / 3
    Lp, Lm = log_shift(x, rp, br), log_shift(x, rm, br)
    return J.exp((b - 3) / 6 * (math.log(3.0) + Lp + Lm) + a / (2 * s) * (Lp - Lm))


def _tc_h3_I(inst, x):
    a, b, g = inst.params.values
    K = (b - 3) * (b - 6) * x * x + 2 * a * (b - 6) * x + a * a + g * (b - 3)
    D = 3 * x * x + g
    return _tc_e(inst, x) * K * _tc_h3_h(inst, x) / (D * D) * _y(inst, x)[0]


def _tc_h3_F(inst, x):
    a, b, g = inst.params.values
    y, dy = _y(inst, x)
    r = ((b - 3) * x + a) / (3 * x * x + g)
    return _tc_e(inst, x) * _tc_h3_h(inst, x) * (r * y - dy)


def _tc_conj_I(inst, x):
    return _tc_e(inst, x) * _y(inst, x)[0] * _ybar(inst, x)[0]


def _tc_conj_F(inst, x):
    a = inst.params.alpha
    y, dy = _y(inst, x)
    h, dh = _ybar(inst, x)
    return _tc_e(inst, x) / (2 * a) * (dh * y - h * dy)


# -- registry --------------------------------------------------------------------


@dataclass(frozen=True)
class _Entry:
    id: IdentityId
    family: Family
    label: str
    constraints: str
    I: object
    F: object
    h: object = None  # auxiliary function with printed (I, F) == lagrangian_pair(h)
    ties: tuple = ()  # (name, function of params giving the required value, label)
    nonzero: tuple = ()  # (label, function of params that must not vanish)
    conj: dict = None  # parameter negations defining the conjugate equation
    conj_scale: object = None
    needs_hchoice: bool = False
    resonant_ok: bool = False
    positive_x: bool = False
    case: object = None
    w_params: object = None  # (params -> parameter values of w, params -> constant c with y' = c w)


def _const(v):
    return lambda p: v


def _p(name):
    return lambda p: getattr(p, name)


def _ch_w(p):
    a, b, g, d, e = p.values
    return (a, b + 1, g + 1, -(b + g) * a / 2, b / 2 + g / 2 - a / 2 + 0.5 + e)


def _ch_c(p):
    a, b, g, d, e = p.values
    return ((1 + g - a) * b + g - a + 2 * e) / (2 * (1 + b))


def _bc_w(p):
    a, b, g, d = p.values
    return (a + 1, b, a - 1, b + d)


def _bc_c(p):
    a, b, g, d = p.values
    return (d + b * (a + 1)) / (2 * (1 + a))


_E = IdentityId
_ENTRIES = {}


def _register(entry):
    _ENTRIES[entry.id] = entry


_register(_Entry(
    _E.CH_ELEM, Family.CH, "confluent: elementary h (power, exponential, trigonometric)",
    "h = x^m e^(rho x^l) sin(k x) | cos(k x); beta != -1",
    _ch_elem_I, _ch_elem_F, h=lambda inst, x: _elem_h(inst, x, 2.0), needs_hchoice=True,
))
_register(_Entry(
    _E.CH_ZERO, Family.CH, "confluent: constant h",
    "h = const; beta != -1", _ch_zero_I, _ch_zero_F, h=lambda inst, x: 2.0 + 0 * x,
))
_register(_Entry(
    _E.CH_ZERO_DER1, Family.CH, "confluent: constant h on the degenerate-derivative surface",
    "delta = -(beta+gamma+2)alpha/2; beta != -1; N != 0",
    _ch_der1_I, _ch_der1_F,
    h=lambda inst, x: 2.0 / _ch_MN(inst.params)[1] + 0 * x,
    ties=(("delta", lambda p: -(p.beta + p.gamma + 2) * p.alpha / 2, "delta = -(beta+gamma+2)alpha/2"),),
    nonzero=(("N != 0", lambda p: _ch_MN(p)[1]),),
    w_params=(_ch_w, _ch_c),
))
_register(_Entry(
    _E.CH_STANJEL, Family.CH, "confluent: resonant bare-solution integral",
    "alpha = gamma = 0, beta = -1, eta = 1/2; delta != 0; resonant (arbitrary seeds only)",
    _ch_stanjel_I, _ch_stanjel_F, h=lambda inst, x: 1.0 / inst.params.delta + 0 * x,
    ties=(
        ("alpha", _const(0j), "alpha = 0"),
        ("beta", _const(-1 + 0j), "beta = -1"),
        ("gamma", _const(0j), "gamma = 0"),
        ("eta", _const(0.5 + 0j), "eta = 1/2"),
    ),
    nonzero=(("delta != 0", _p("delta")),),
    resonant_ok=True,
))
_register(_Entry(
    _E.CH_HYP, Family.CH, "confluent: Gauss hypergeometric h",
    "alpha = 0; beta != 1 (and 1-beta not a non-positive integer); beta != -1",
    _ch_hyp_I, _ch_hyp_F, h=_ch_hyp_h,
    ties=(("alpha", _const(0j), "alpha = 0"),),
    nonzero=(("beta != 1", lambda p: p.beta - 1),),
))
_register(_Entry(
    _E.CH_H3, Family.CH, "confluent: h solving the first-order reduced equation",
    "alpha != 0 (C = 2 alpha); case by sign of Delta = AC - B^2; Delta = 0 pole outside [0, 1]",
    _ch_h3_I, _ch_h3_F, h=_ch_h3_h,
    nonzero=(("alpha != 0", _p("alpha")),),
    case=_ch_h3_case,
))
_register(_Entry(
    _E.CH_BESSEL, Family.CH, "confluent: Bessel-function h",
    "η = η₀ = (1+β)α/2 − (1+γ)β/2 − γ/2; Omega != 0",
    _ch_bessel_I, _ch_bessel_F, h=_ch_bessel_h,
    ties=(("eta", lambda p: (1 + p.beta) * p.alpha / 2 - (1 + p.gamma) * p.beta / 2 - p.gamma / 2,
           "η = η₀ = (1+β)α/2 − (1+γ)β/2 − γ/2"),),
    nonzero=(("Omega != 0", _ch_omega),),
))
_register(_Entry(
    _E.CH_CONJ, Family.CH, "confluent: product of conjugate solutions",
    "η ≠ 0; conjugate: eta -> -eta",
    _ch_conj_I, _ch_conj_F, nonzero=(("η ≠ 0", _p("eta")),),
    conj={"eta": -1}, conj_scale=lambda p: 1 / (2 * p.eta),
))
_register(_Entry(
    _E.BC_ELEM, Family.BC, "biconfluent: elementary h (power, exponential, trigonometric)",
    "h = x^m e^(rho x^l) sin(k x) | cos(k x); alpha != -1",
    _bc_elem_I, _bc_elem_F, h=_elem_h, needs_hchoice=True,
))
_register(_Entry(
    _E.BC_ZERO, Family.BC, "biconfluent: constant h",
    "h = const; alpha != -1", _bc_zero_I, _bc_zero_F, h=lambda inst, x: 2.0 + 0 * x,
))
_register(_Entry(
    _E.BC_ZERO_SPC, Family.BC, "biconfluent: constant h with gamma = alpha + 2",
    "gamma = alpha + 2; alpha != 1 and alpha != -1 (printed condition and derivation denominator); "
    "delta + beta(alpha+1) != 0",
    _bc_spc_I, _bc_spc_F,
    h=lambda inst, x: -2.0 / _bc_A(inst.params)[1] + 0 * x,
    ties=(("gamma", lambda p: p.alpha + 2, "gamma = alpha+2"),),
    nonzero=(("alpha != 1", lambda p: p.alpha - 1), ("delta+beta(alpha+1) != 0", lambda p: _bc_A(p)[1])),
    w_params=(_bc_w, _bc_c),
))
_register(_Entry(
    _E.BC_ERFI, Family.BC, "biconfluent: imaginary error function h",
    "alpha = -1; resonant (arbitrary seeds only)",
    _bc_erfi_I, _bc_erfi_F, h=_bc_erfi_h,
    ties=(("alpha", _const(-1 + 0j), "alpha = -1"),),
    resonant_ok=True,
))
_register(_Entry(
    _E.BC_H3, Family.BC, "biconfluent: h solving the first-order reduced equation",
    "case by sign of Delta = -2(alpha+1) - beta^2/4 (Delta > 0 needs alpha < -1); "
    "Delta = 0 needs beta real outside [-4, 0]; alpha != -1",
    _bc_h3_I, _bc_h3_F, h=lambda inst, x: 4.0 * _bc_h3_h(inst, x),
    case=_bc_h3_case,
))
_register(_Entry(
    _E.BC_CONJ, Family.BC, "biconfluent: product of conjugate solutions",
    "conjugate: (gamma, delta) -> (-gamma, -delta); alpha != -1",
    _bc_conj_I, _bc_conj_F, conj={"gamma": -1, "delta": -1}, conj_scale=_const(1.0),
))
_register(_Entry(
    _E.DC_ELEM, Family.DC, "doubly confluent: elementary h (power, exponential, trigonometric)",
    "h = x^m e^(rho x^l) sin(k x) | cos(k x); x = 0 excluded when m < 2",
    _dc_elem_I, _dc_elem_F, h=_elem_h, needs_hchoice=True,
))
_register(_Entry(
    _E.DC_ZERO, Family.DC, "doubly confluent: constant h",
    "h = const", _dc_zero_I, _dc_zero_F, h=lambda inst, x: 1.0 + 0 * x,
))
_register(_Entry(
    _E.DC_LOG, Family.DC, "doubly confluent: logarithmic h",
    "alpha = 0; h = ln sqrt((x-1)/(x+1))",
    _dc_log_I, _dc_log_F, h=_dc_log_h,
    ties=(("alpha", _const(0j), "alpha = 0"),),
))
_register(_Entry(
    _E.DC_H3, Family.DC, "doubly confluent: h solving the first-order reduced equation",
    "alpha = 0; x > 0",
    _dc_h3_I, _dc_h3_F, h=lambda inst, x: 4.0 * _dc_h3_h(inst, x),
    ties=(("alpha", _const(0j), "alpha = 0"),),
    positive_x=True,
))
_register(_Entry(
    _E.DC_CONJ, Family.DC, "doubly confluent: product of conjugate solutions (Wronskian form)",
    "γ ≠ 0; conjugate: gamma -> -gamma",
    _dc_conj_I, _dc_conj_F, nonzero=(("γ ≠ 0", _p("gamma")),),
    conj={"gamma": -1}, conj_scale=lambda p: 1 / (2 * p.gamma),
))
_register(_Entry(
    _E.TC_ELEM, Family.TC, "triconfluent: elementary h (power, exponential, trigonometric)",
    "h = x^m e^(rho x^l) sin(k x) | cos(k x); x = 0 excluded when m < 2",
    _tc_elem_I, _tc_elem_F, h=_elem_h, needs_hchoice=True,
))
_register(_Entry(
    _E.TC_GAMMA, Family.TC, "triconfluent: upper incomplete gamma h",
    "gamma = 0; x > 0",
    _tc_gamma_I, _tc_gamma_F, h=lambda inst, x: _tc_gamma_G(inst, x),
    ties=(("gamma", _const(0j), "gamma = 0"),),
    positive_x=True,
))
_register(_Entry(
    _E.TC_H3, Family.TC, "triconfluent: h solving the first-order reduced equation",
    "case by sign of gamma; x > 0 when gamma = 0",
    _tc_h3_I, _tc_h3_F, h=_tc_h3_h, case=_tc_h3_case,
))
_register(_Entry(
    _E.TC_CONJ, Family.TC, "triconfluent: product of conjugate solutions",
    "α ≠ 0; conjugate: alpha -> -alpha",
    _tc_conj_I, _tc_conj_F, nonzero=(("α ≠ 0", _p("alpha")),),
    conj={"alpha": -1}, conj_scale=lambda p: 1 / (2 * p.alpha),
))


def entry(id):
    return _ENTRIES[IdentityId(id)]


def list_identities():
    """``(id, label, constraint summary)`` for every catalog entry."""
    return [(e.id, e.label, e.constraints) for e in _ENTRIES.values()]


def complete_params(id, values):
    """Parameter set for ``id`` from free values, with tied parameters filled in.

    ``values`` maps parameter names to numbers; tied names are overwritten in
    declaration order (so later ties may use earlier ones).
    """
    e = entry(id)
    from .series import PARAM_NAMES

    vals = dict(values)
    for name, _, _ in e.ties:
        vals.setdefault(name, 0)
    for name, fn, _ in e.ties:
        vals[name] = fn(ParamSet(e.family, tuple(vals[n] for n in PARAM_NAMES[e.family])))
    return ParamSet(e.family, tuple(vals[n] for n in PARAM_NAMES[e.family]))


def conjugate_params(id, params):
    e = entry(id)
    if e.conj is None:
        raise ValueError(f"{e.id.value} is not a conjugate-equation entry")
    return params.replace(**{k: s * getattr(params, k) for k, s in e.conj.items()})


def _negative_integer(z):
    r = round(z.real)
    return abs(z - r) <= ZERO_TOL and r <= -1


def bad_points(id, params, hchoice=None):
    """Points (possibly complex) the domain must keep clear of, beyond the family singularities."""
    e = entry(id)
    pts = []
    if e.positive_x or (e.needs_hchoice and e.family in (Family.DC, Family.TC) and hchoice is not None
                        and hchoice.m < 2):
        pts.append(0j)
    case = e.case(params) if e.case else None
    if e.id is IdentityId.CH_H3:
        M, N, A, B, C, D = _ch_h3_coeffs(params)
        if abs(C) > ZERO_TOL:
            pts.extend(_roots2(C, 2 * B, A))
    elif e.id is IdentityId.BC_H3:
        a, b, g, d = params.values
        pts.extend(_roots2(2 + 0j, b, -a - 1))
    elif e.id is IdentityId.TC_H3:
        if case == "gamma=0":
            pts.append(0j)
        else:
            s = cmath.sqrt(-3 * params.gamma)
            pts.extend((s / 3, -s / 3))
    return pts


def _clip(lo, hi, points, margin=DOMAIN_MARGIN):
    cuts = sorted(p.real for p in points if abs(p.imag) < NEAR_REAL)
    pieces = [(lo, hi)]
    for c in cuts:
        nxt = []
        for a, b in pieces:
            if c + margin <= a or c - margin >= b:
                nxt.append((a, b))
                continue
            if c - margin > a:
                nxt.append((a, c - margin))
            if c + margin < b:
                nxt.append((c + margin, b))
        pieces = nxt
    if not pieces:
        return None
    return max(pieces, key=lambda ab: ab[1] - ab[0])


def default_domain(id, params, hchoice=None):
    """Family default interval, restricted by the entry's exclusions; ``None`` if too short."""
    e = entry(id)
    lo, hi = DEFAULT_DOMAINS[e.family]
    if (e.positive_x or bad_points(id, params, hchoice) and 0j in bad_points(id, params, hchoice)) and lo < 0.1:
        lo = 0.1
    dom = _clip(lo, hi, [p for p in bad_points(id, params, hchoice) if p != 0j])
    if dom is None or dom[1] - dom[0] < MIN_DOMAIN:
        return None
    return dom


def validity(id, params, hchoice=None):
    """Check every constraint of the entry; never raises."""
    e = entry(id)
    violations = []
    notes = []
    if params.family is not e.family:
        return ValidityReport(False, (("family", f"expected {e.family.value} parameters"),))
    for name, fn, label in e.ties:
        want = fn(params)
        if abs(getattr(params, name) - want) > ZERO_TOL:
            violations.append((label, f"{name} = {getattr(params, name)}, required {want}"))
    for label, fn in e.nonzero:
        try:
            v = fn(params)
        except ZeroDivisionError:
            v = 0
        if abs(v) <= ZERO_TOL:
            violations.append((label, "value vanishes"))
    if e.needs_hchoice and hchoice is None:
        violations.append(("hchoice", "entry needs an elementary h choice"))

    key = {Family.CH: "beta", Family.BC: "alpha"}.get(e.family)
    if key is not None:
        v = getattr(params, key)
        if _negative_integer(v):
            notes.append("resonant")
            if abs(v + 1) <= ZERO_TOL and not e.resonant_ok:
                violations.append((f"{key} != -1", "nondegeneracy"))
    if e.id is IdentityId.CH_HYP:
        b = params.beta
        r = round(b.real)
        if abs(b - r) <= ZERO_TOL and r >= 1:
            violations.append(("1-beta not a non-positive integer", f"beta = {b}"))
    if e.id is IdentityId.BC_ZERO_SPC and abs(params.alpha + 1) <= ZERO_TOL and "alpha != -1" not in [
        v[0] for v in violations
    ]:
        violations.append(("alpha != -1", "derivation divides by alpha+1"))
    if e.id is IdentityId.BC_ZERO_SPC:
        notes.append("printed condition alpha != 1; derivation denominator alpha+1; both excluded")

    case = e.case(params) if e.case else None
    if case:
        notes.append(f"case {case}")
    if e.id is IdentityId.CH_H3 and case == "delta=0":
        M, N, A, B, C, D = _ch_h3_coeffs(params)
        if abs(C) > ZERO_TOL:
            x0 = -B / C
            if abs(x0.imag) <= ZERO_TOL and 0 <= x0.real <= 1:
                violations.append(("Delta=0 pole outside [0, 1]", f"x0 = {x0}"))
    if e.id is IdentityId.BC_H3 and case == "delta=0":
        b = params.beta
        if abs(b.imag) > ZERO_TOL or -4 <= b.real <= 0:
            violations.append(("beta real outside [-4, 0]", f"beta = {b}"))

    dom = None
    if not violations:
        dom = default_domain(id, params, hchoice)
        if dom is None:
            violations.append(("domain", "no sub-interval of the default domain clears the excluded points"))
    return ValidityReport(not violations, tuple(violations), tuple(notes), case, dom)


def _in_domain(x, dom):
    x0 = x.x0 if isinstance(x, Jet) else complex(x)
    lo, hi = dom
    return abs(x0.imag) == 0.0 and lo - 1e-12 <= x0.real <= hi + 1e-12


def instantiate(id, params, hchoice=None, seed_mode=CANONICAL, domain=None, branch=1, variant="J"):
    """Bind an entry to parameters; raises :class:`InvalidInstance` when invalid."""
    e = entry(id)
    report = validity(id, params, hchoice)
    if not report.ok:
        raise InvalidInstance(report)
    if report.resonant and seed_mode.is_canonical:
        raise InvalidInstance(
            ValidityReport(False, (("resonant", "canonical normalization undefined; use arbitrary seeds"),),
                           report.notes, report.case)
        )
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    if variant not in ("J", "Y"):
        raise ValueError("variant must be 'J' or 'Y'")
    dom = tuple(float(v) for v in (domain if domain is not None else report.domain))
    if not dom[0] < dom[1]:
        raise ValueError("empty domain")
    ode = ode_from_family(e.family, params)
    for s in ode.sing:
        if dom[0] <= s <= dom[1]:
            raise InvalidInstance(ValidityReport(False, (("domain", f"contains the singular point {s}"),)))

    sols = {}
    if seed_mode.is_canonical:
        sols["y"] = canonical_solution(e.family, params)
        if e.conj:
            sols["bar"] = canonical_solution(e.family, conjugate_params(id, params))
        if e.w_params:
            wvals, _ = e.w_params
            sols["w"] = canonical_solution(e.family, ParamSet(e.family, wvals(params)))
    else:
        anchor = seed_mode.anchor if seed_mode.anchor is not None else 0.5 * (dom[0] + dom[1])
        if not dom[0] <= anchor <= dom[1]:
            raise ValueError("anchor outside the domain")
        seed_mode = SeedMode.arbitrary(seed_mode.y0, seed_mode.y1, anchor, seed_mode.h0, seed_mode.h1)
        sols["y"] = Solution.from_seeds(e.family, params, anchor, seed_mode.y0, seed_mode.y1)
        if e.conj:
            sols["bar"] = Solution.from_seeds(e.family, conjugate_params(id, params), anchor,
                                              seed_mode.h0, seed_mode.h1)
        if e.w_params:
            # y' solves the w equation for every solution y; w = y'/c
            wvals, cfn = e.w_params
            c = cfn(params)
            yj = heun_jet(sols["y"], anchor, 2)
            sols["w"] = Solution.from_seeds(e.family, ParamSet(e.family, wvals(params)), anchor,
                                            yj.coeffs[1] / c, 2 * yj.coeffs[2] / c)
    return IdentityInstance(IdentityId(id), e.family, params, hchoice, dom, seed_mode, branch,
                            variant, report.case, sols)


def integrand(inst, x):
    """Left-hand integrand ``I(x)``; ``x`` a real number or a jet."""
    if not _in_domain(x, inst.domain):
        raise DomainError(f"x outside the instance domain {inst.domain}")
    return entry(inst.id).I(inst, x)


def antiderivative(inst, x):
    """Right-hand side ``F(x)`` with integration constant 0; ``x`` a real number or a jet."""
    if not _in_domain(x, inst.domain):
        raise DomainError(f"x outside the instance domain {inst.domain}")
    return entry(inst.id).F(inst, x)


def auxiliary_h(inst, x):
    """The ``h`` for which the entry's printed pair equals :func:`lagrangian_pair`."""
    e = entry(inst.id)
    if e.h is None:
        raise ValueError(f"{e.id.value} is a conjugate-equation entry")
    return e.h(inst, x)


def generic_pair(inst, x):
    """``(I, F)`` at ``x`` from the generic construction, scaled like the printed entry."""
    e = entry(inst.id)
    if e.conj:
        I, F = conjugate_pair(inst.family, inst.params, conjugate_params(inst.id, inst.params), x,
                              inst._sols["y"], inst._sols["bar"], inst.branch)
        s = e.conj_scale(inst.params)
        return I * s, F * s
    return lagrangian_pair(inst.family, inst.params, lambda X: e.h(inst, X), x, inst._sols["y"], inst.branch)
