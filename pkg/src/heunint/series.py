"""Confluent Heun equations and their local analytic solutions.

Each family is written as ``A(x) y'' + B(x) y' + C(x) y = 0`` with polynomial
coefficients. Solutions are generated from the term-by-term Taylor recurrence
of that equation: at the origin for the canonical local solution, or at an
interior anchor for arbitrary initial data. Points outside the disc of
convergence are reached by recentering (a chain of Taylor patches along the
real axis), each patch expanded from the value and slope delivered by its
predecessor.
"""

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, DomainError, ResonanceError
from .jet import Jet

ROOT_FRACTION = 0.7  # direct summation radius, as a fraction of the convergence radius
HOP_FRACTION = 0.4  # continuation step, as a fraction of the distance to a singularity
INFINITE_ROOT_REACH = 2.5  # direct summation radius for entire solutions
INFINITE_HOP = 1.0
MAX_TERMS = 500
MAX_HOPS = 400
TAIL_TOL = 1e-17
SINGULAR_START = 0.05
SINGULAR_START_TERMS = 24


class Family(str, enum.Enum):
    CH = "CH"  # confluent
    BC = "BC"  # biconfluent
    DC = "DC"  # doubly confluent
    TC = "TC"  # triconfluent


PARAM_NAMES = {
    Family.CH: ("alpha", "beta", "gamma", "delta", "eta"),
    Family.BC: ("alpha", "beta", "gamma", "delta"),
    Family.DC: ("alpha", "beta", "gamma", "delta"),
    Family.TC: ("alpha", "beta", "gamma"),
}


@dataclass(frozen=True)
class ParamSet:
    """Parameter tuple of one family, in the family's canonical order."""

    family: Family
    values: tuple

    def __post_init__(self):
        fam = Family(self.family)
        vals = tuple(complex(v) for v in self.values)
        if len(vals) != len(PARAM_NAMES[fam]):
            raise ValueError(
                f"{fam.value} takes {len(PARAM_NAMES[fam])} parameters, got {len(vals)}"
            )
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, family, *values):
        return cls(Family(family), values)

    def __getattr__(self, name):
        if name in ("family", "values"):
            raise AttributeError(name)
        names = PARAM_NAMES[self.family]
        if name in names:
            return self.values[names.index(name)]
        raise AttributeError(name)

    def replace(self, **changes):
        names = PARAM_NAMES[self.family]
        unknown = set(changes) - set(names)
        if unknown:
            raise ValueError(f"unknown parameter(s) {sorted(unknown)}")
        vals = [changes.get(n, v) for n, v in zip(names, self.values)]
        return ParamSet(self.family, tuple(vals))

    def as_dict(self):
        return dict(zip(PARAM_NAMES[self.family], self.values))

    @property
    def is_real(self):
        return all(v.imag == 0.0 for v in self.values)


def _polymul(a, b):
    return tuple(np.convolve(np.asarray(a, complex), np.asarray(b, complex)))


def polyval(coeffs, z):
    """Horner evaluation of ascending ``coeffs`` at a number or a :class:`Jet`."""
    result = 0j
    for c in reversed(coeffs):
        result = result * z + c
    return result


def taylor_shift(coeffs, x0):
    """Ascending coefficients of ``P(x0 + t)`` as a polynomial in ``t``."""
    c = [complex(v) for v in coeffs]
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += x0 * c[j + 1]
    return c


@dataclass(frozen=True)
class PolyODE:
    """``A y'' + B y' + C y = 0`` with ascending coefficient tuples."""

    A: tuple
    B: tuple
    C: tuple
    sing: tuple

    def p(self, z):
        return polyval(self.B, z) / polyval(self.A, z)

    def q(self, z):
        return polyval(self.C, z) / polyval(self.A, z)

    def shifted(self, x0):
        return (
            taylor_shift(self.A, x0),
            taylor_shift(self.B, x0),
            taylor_shift(self.C, x0),
        )

    def distance_to_singularity(self, x, exclude=None):
        d = [abs(x - s) for s in self.sing if exclude is None or s != exclude]
        return min(d) if d else math.inf


def ode_from_family(family, params):
    """Polynomial form of the family's equation with denominators cleared."""
    family = Family(family)
    if params.family is not family:
        raise ValueError(f"parameters belong to {params.family.value}, not {family.value}")
    if family is Family.CH:
        a, b, g, d, e = params.values
        M = (b + g + 2) * a + 2 * d
        N = -(b + 1) * a + (g + 1) * b + 2 * e + g
        A = (0j, -1 + 0j, 1 + 0j)
        B = (-(1 + b), -a + (1 + b) + (1 + g), a)
        C = (N / 2, M / 2)
        sing = (0.0, 1.0)
    elif family is Family.BC:
        a, b, g, d = params.values
        A = (0j, 1 + 0j)
        B = (a + 1, -b, -2 + 0j)
        C = (-(d + b * (a + 1)) / 2, g - a - 2)
        sing = (0.0,)
    elif family is Family.DC:
        a, b, g, d = params.values
        A = _polymul(_polymul((-1, 0, 1), (-1, 0, 1)), (-1, 0, 1))
        B = _polymul((-a, -2, -a, 2), (-1, 0, 1))
        C = (d, g + 2 * a, b)
        sing = (-1.0, 1.0)
    else:
        a, b, g = params.values
        A = (1 + 0j,)
        B = (-g, 0j, -3 + 0j)
        C = (a, b - 3)
        sing = ()
    as_c = lambda t: tuple(complex(v) for v in t)
    return PolyODE(as_c(A), as_c(B), as_c(C), sing)


@dataclass(frozen=True)
class SeedPair:
    """Initial value and slope; ``y1=None`` means fixed by the recurrence."""

    y0: complex
    y1: complex = None


AUTO = None


def _negative_integer(z, tol=1e-12):
    r = round(z.real)
    return abs(z - r) <= tol and r <= -1


def seeds_for(family, params):
    """Seeds of the canonical local solution at the origin."""
    family = Family(family)
    if family is Family.CH:
        if _negative_integer(params.beta):
            raise ResonanceError(
                f"beta = {params.beta} is a negative integer; H_c normalization undefined",
                index=int(-round(params.beta.real)),
            )
        return SeedPair(1.0 + 0j, AUTO)
    if family is Family.BC:
        if _negative_integer(params.alpha):
            raise ResonanceError(
                f"alpha = {params.alpha} is a negative integer; H_b normalization undefined",
                index=int(-round(params.alpha.real)),
            )
        return SeedPair(1.0 + 0j, AUTO)
    return SeedPair(1.0 + 0j, 0j)


def _coeff(seq, i):
    return seq[i] if 0 <= i < len(seq) else 0j


def _expand(A, B, C, y0, y1, n=None, reach=None, cap=MAX_TERMS):
    """Taylor coefficients of a solution of the (shifted) polynomial ODE.

    Ordinary point (``A[0] != 0``): ``y0, y1`` both seed the series. Regular
    singular point (``A[0] == 0``): only ``y0``; ``c1`` comes from the first
    recurrence equation. With ``n=None`` the series is extended until
    ``|c_k| reach**k`` stays below ``TAIL_TOL * scale`` for five consecutive
    ``k`` (at most ``cap`` terms).
    """
    s = 2 if A[0] != 0 else 1
    if s == 1 and y1 is not None:
        raise DomainError("slope cannot be prescribed at a singular point")
    width = max(len(A) - 1, len(B), len(C) + 1)
    limit = cap if n is None else n
    c = [complex(y0)]
    if s == 2:
        c.append(complex(y1))
    scale = abs(c[0]) + (abs(c[1]) * reach if s == 2 and reach else 0.0)
    quiet = 0
    eq = 0
    while len(c) <= limit:
        top = eq + s
        acc = 0j
        for k in range(max(0, eq - width), top):
            g = _coeff(A, eq - k + 2) * (k * (k - 1)) + _coeff(B, eq - k + 1) * k + _coeff(C, eq - k)
            if g != 0:
                acc += g * c[k]
        gtop = _coeff(A, 2 - s) * (top * (top - 1)) + _coeff(B, 1 - s) * top
        if abs(gtop) < 1e-12 * top:
            raise ResonanceError(f"recurrence factor vanishes at index {top}", index=top)
        ck = -acc / gtop
        c.append(ck)
        eq += 1
        if n is None:
            term = abs(ck) * reach**top
            scale = max(scale, term)
            if term < TAIL_TOL * scale or (scale == 0 and term == 0):
                quiet += 1
                if quiet >= 5:
                    break
            else:
                quiet = 0
    if n is None and quiet < 5:
        raise ConvergenceError(f"Taylor series not converged within {cap} terms")
    if n is not None:
        c = c[: n + 1]
    return np.array(c, dtype=complex)


def taylor_coeffs(ode, seeds, N=None, x0=0.0, reach=None):
    """Taylor coefficients at ``x0`` of the solution with the given seeds.

    ``N=None`` selects the truncation adaptively for evaluation up to
    ``reach`` (default: 0.7 of the distance to the nearest other singularity).
    """
    A, B, C = ode.shifted(x0) if x0 != 0 else (ode.A, ode.B, ode.C)
    if N is None and reach is None:
        R = ode.distance_to_singularity(x0, exclude=x0)
        reach = ROOT_FRACTION * R if math.isfinite(R) else INFINITE_ROOT_REACH
    return _expand(A, B, C, seeds.y0, seeds.y1, n=N, reach=reach)


class _Patch:
    __slots__ = ("center", "reach", "coeffs", "_k", "_dcoeffs")

    def __init__(self, center, reach, coeffs):
        self.center = center
        self.reach = reach
        self.coeffs = coeffs
        self._k = np.arange(coeffs.size)
        self._dcoeffs = coeffs[1:] * self._k[1:]

    def eval(self, x):
        # powers then a dot product: much faster than a Horner loop in Python
        tk = np.power(complex(x - self.center), self._k)
        y = np.dot(self.coeffs, tk)
        dy = np.dot(self._dcoeffs, tk[:-1]) if self._dcoeffs.size else 0j
        return complex(y), complex(dy)


class Solution:
    """A solution of one family's equation, anchored at a real point.

    ``Solution.canonical`` gives the local analytic solution normalized at the
    origin; ``Solution.from_seeds`` gives the solution with prescribed value
    and slope at an ordinary point. Patches for continuation are built on
    first use and never modified afterwards.
    """

    def __init__(self, family, params, anchor=0.0, seeds=None):
        self.family = Family(family)
        self.params = params
        self.ode = ode_from_family(self.family, params)
        self.anchor = float(anchor)
        if seeds is None:
            if self.anchor != 0.0:
                raise ValueError("canonical seeds are defined only at the origin")
            seeds = seeds_for(self.family, params)
        self.seeds = seeds
        singular_anchor = self.anchor in self.ode.sing
        if singular_anchor and seeds.y1 is not None:
            raise DomainError(f"x = {self.anchor} is a singular point of the equation")
        self.radius = self.ode.distance_to_singularity(self.anchor, exclude=self.anchor)
        reach = (
            ROOT_FRACTION * self.radius
            if math.isfinite(self.radius)
            else INFINITE_ROOT_REACH
        )
        self.coeffs0 = taylor_coeffs(self.ode, seeds, None, x0=self.anchor, reach=reach)
        root = _Patch(self.anchor, reach, self.coeffs0)
        self._chains = {1: [root], -1: [root]}

    @classmethod
    def canonical(cls, family, params):
        return cls(family, params)

    @classmethod
    def from_seeds(cls, family, params, anchor, y0, y1):
        return cls(family, params, anchor, SeedPair(complex(y0), complex(y1)))

    @property
    def is_canonical(self):
        return self.anchor == 0.0 and self.seeds == seeds_for(self.family, self.params)

    def _patch_for(self, x):
        root = self._chains[1][0]
        if abs(x - self.anchor) <= root.reach:
            return root
        if isinstance(x, complex) and x.imag != 0.0:
            raise DomainError("complex points are supported only inside the root disc")
        x = float(x.real) if isinstance(x, complex) else float(x)
        direction = 1 if x > self.anchor else -1
        lo, hi = sorted((self.anchor, x))
        for s in self.ode.sing:
            if s != self.anchor and lo <= s <= hi:
                raise DomainError(f"path from {self.anchor} to {x} meets the singularity {s}")
        chain = self._chains[direction]
        i = 0
        while True:
            if i >= len(chain):
                if len(chain) > MAX_HOPS:
                    raise ConvergenceError(f"continuation budget exhausted before x = {x}")
                chain.append(self._hop(chain[-1], direction))
            patch = chain[i]
            if abs(x - patch.center) <= patch.reach:
                return patch
            i += 1

    def _hop(self, patch, direction):
        center = patch.center + direction * patch.reach
        y, dy = patch.eval(center)
        d = self.ode.distance_to_singularity(center)
        reach = min(HOP_FRACTION * d, INFINITE_HOP)
        coeffs = taylor_coeffs(self.ode, SeedPair(y, dy), None, x0=center, reach=reach)
        return _Patch(center, reach, coeffs)

    def __call__(self, x):
        return heun_eval(self, x)


@functools.lru_cache(maxsize=512)
def _cached_canonical(family, values):
    return Solution(family, ParamSet(family, values))


def canonical_solution(family, params):
    """Shared canonical :class:`Solution`; safe to cache because solutions are immutable."""
    family = Family(family)
    if params.family is not family:
        raise ValueError(f"parameters belong to {params.family.value}, not {family.value}")
    return _cached_canonical(family, params.values)


def heun_eval(sol, x):
    """Value and first derivative of ``sol`` at ``x``."""
    if isinstance(x, complex) and x.imag == 0.0:
        x = x.real
    return sol._patch_for(x).eval(x)


def heun_jet(sol, x0, order):
    """Order-``order`` jet of ``sol`` at ``x0``.

    The value and slope come from :func:`heun_eval`; higher coefficients come
    from the equation's recurrence recentered at ``x0``.
    """
    x0 = float(x0.real) if isinstance(x0, complex) else float(x0)
    if x0 == sol.anchor:
        c = sol.coeffs0
        if c.size < order + 1:
            c = taylor_coeffs(sol.ode, sol.seeds, order, x0=sol.anchor)
        return Jet(c[: order + 1], x0)
    if x0 in sol.ode.sing:
        raise DomainError(f"x = {x0} is a singular point")
    y, dy = heun_eval(sol, x0)
    if order == 0:
        return Jet([y], x0)
    A, B, C = sol.ode.shifted(x0)
    return Jet(_expand(A, B, C, y, dy, n=order), x0)


def continue_solution(family, params, x0, seeds, x1, rtol=1e-13):
    """Propagate ``(y, y')`` from ``x0`` to ``x1`` with an explicit RK8 integrator.

    Independent of the Taylor-recurrence engine except at a regular singular
    starting point, where the first step off the singularity (length
    ``SINGULAR_START``) uses a ``SINGULAR_START_TERMS``-term local series of the
    analytic solution. A cruder start would excite the second, singular
    solution, which the integration then amplifies. ``x1`` may be a sequence; the result is
    then a pair of arrays.
    """
    family = Family(family)
    ode = ode_from_family(family, params)
    y0, y1 = (complex(s) for s in seeds)
    xs = np.atleast_1d(np.asarray(x1, dtype=float))
    x0 = float(x0)
    for x in xs:
        lo, hi = sorted((x0, x))
        for s in ode.sing:
            if lo < s <= hi or (s == lo and s != x0):
                raise DomainError(f"singularity {s} inside [{lo}, {hi}]")
    if y0 == 0 and y1 == 0:
        z = np.zeros(xs.size, dtype=complex)
        return (z[0], z[0]) if np.ndim(x1) == 0 else (z, z)

    start = x0
    state = np.array([y0, y1], dtype=complex)
    if x0 in ode.sing:
        c = _expand(*ode.shifted(x0), y0, None, n=SINGULAR_START_TERMS)
        if abs(c[1] - y1) > 1e-10 * max(1.0, abs(y1)):
            raise DomainError("slope at a singular point must match the analytic solution")
        direction = 1.0 if xs.max() > x0 else -1.0
        eps = SINGULAR_START * direction
        start = x0 + eps
        k = np.arange(c.size)
        state = np.array([np.sum(c * eps**k), np.sum(k[1:] * c[1:] * eps ** (k[1:] - 1))])

    A, B, C = ode.A, ode.B, ode.C

    def rhs(x, u):
        a = polyval(A, x)
        return [u[1], -(polyval(B, x) * u[1] + polyval(C, x) * u[0]) / a]

    out_y = np.empty(xs.size, dtype=complex)
    out_dy = np.empty(xs.size, dtype=complex)
    for sign in (1, -1):
        sel = np.nonzero((xs - start) * sign > 0)[0]
        if sel.size == 0:
            continue
        order = sel[np.argsort((xs[sel] - start) * sign)]
        targets = xs[order]
        res = solve_ivp(
            rhs,
            (start, targets[-1]),
            state,
            method="DOP853",
            t_eval=targets,
            rtol=rtol,
            atol=1e-15 * max(1.0, float(np.max(np.abs(state)))),
        )
        if not res.success:
            raise ConvergenceError(f"integrator failed: {res.message}")
        out_y[order] = res.y[0]
        out_dy[order] = res.y[1]
    at_start = np.nonzero(xs == start)[0]
    out_y[at_start] = state[0]
    out_dy[at_start] = state[1]
    if np.ndim(x1) == 0:
        return complex(out_y[0]), complex(out_dy[0])
    return out_y, out_dy


def ode_residual(family, params, yjet):
    """Normalized ``A y'' + B y' + C y`` at the jet's basepoint."""
    if yjet.order < 2:
        raise ValueError("residual needs a jet of order >= 2")
    ode = ode_from_family(family, params)
    x0 = yjet.x0
    y, dy, d2y = yjet.coeffs[0], yjet.coeffs[1], 2.0 * yjet.coeffs[2]
    terms = (polyval(ode.A, x0) * d2y, polyval(ode.B, x0) * dy, polyval(ode.C, x0) * y)
    norm = max(1.0, *(abs(t) for t in terms))
    return complex(sum(terms) / norm)
