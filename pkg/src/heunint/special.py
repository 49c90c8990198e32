"""Desk-scale special functions by direct series summation.

Every function accepts a complex number or a :class:`~heunint.jet.Jet`. On a
jet the series is summed term by term in jet arithmetic, which yields the
Taylor expansion of the composed function (the jet "lift") without any
separate derivative formula.

Domains are capped (``|z| <= 4`` for 1F1, ``|z| <= 0.9`` for 2F1, ...);
outside them the functions raise rather than lose accuracy silently.
"""

import math
from dataclasses import dataclass

from . import jet as J
from .errors import ConvergenceError, DomainError

EULER_GAMMA = 0.57721566490153286061
GAMMA_ONE_THIRD = math.gamma(1.0 / 3.0)


@dataclass(frozen=True)
class SpecialFnConfig:
    series_tol: float = 1e-15
    max_terms: int = 400

    def __post_init__(self):
        if self.series_tol <= 0 or self.max_terms <= 10:
            raise ValueError("series_tol must be > 0 and max_terms > 10")


DEFAULT = SpecialFnConfig()


def _nonpositive_integer(z, tol=1e-12):
    z = complex(z)
    r = round(z.real)
    return abs(z - r) <= tol and r <= 0


def _sum(first, ratio, config, what):
    """Sum ``t_0 + t_1 + ...`` with ``t_{n+1} = t_n * ratio(n)``.

    Stops once the last three terms are all below ``series_tol`` times the
    running sum.
    """
    total = first
    term = first
    small = 0
    for n in range(config.max_terms):
        term = term * ratio(n)
        total = total + term
        if J.magnitude(term) <= config.series_tol * J.magnitude(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise ConvergenceError(f"{what} series did not converge", best=total)


def hyp1f1(a, b, z, config=DEFAULT):
    """Kummer's confluent hypergeometric function 1F1(a; b; z)."""
    if _nonpositive_integer(b):
        raise DomainError(f"1F1 undefined for b = {b}")
    if abs(J.value(z)) > 4.0:
        raise DomainError("1F1 implemented for |z| <= 4 only")
    a, b = complex(a), complex(b)
    return _sum(z * 0 + 1.0, lambda n: z * ((a + n) / ((b + n) * (n + 1))), config, "1F1")


def hyp2f1(a, b, c, z, config=DEFAULT):
    """Gauss hypergeometric function 2F1(a, b; c; z) for ``|z| <= 0.9``."""
    if _nonpositive_integer(c):
        raise DomainError(f"2F1 undefined for c = {c}")
    if abs(J.value(z)) > 0.9:
        raise DomainError("2F1 implemented for |z| <= 0.9 only")
    a, b, c = complex(a), complex(b), complex(c)
    return _sum(
        z * 0 + 1.0,
        lambda n: z * ((a + n) * (b + n) / ((c + n) * (n + 1))),
        config,
        "2F1",
    )


def _besselj(n, z, config):
    half = z / 2.0
    w = -(half * half)
    first = half if n == 1 else half * 0 + 1.0
    return _sum(first, lambda k: w / ((k + 1) * (k + 1 + n)), config, f"J{n}")


def bessel(kind, n, z, config=DEFAULT):
    """Bessel functions J0, J1, Y0, Y1 of complex argument, ``|z| <= 20``.

    Y uses the logarithmic ascending series with the principal logarithm.
    """
    if n not in (0, 1):
        raise ValueError("only orders 0 and 1 are implemented")
    z0 = J.value(z)
    if abs(z0) > 20.0:
        raise DomainError("Bessel functions implemented for |z| <= 20 only")
    jn = _besselj(n, z, config)
    if kind == "J":
        return jn
    if kind != "Y":
        raise ValueError(f"unknown Bessel kind {kind!r}")
    if z0 == 0:
        raise DomainError("Y is singular at z = 0")
    half = z / 2.0
    w = -(half * half)
    lg = J.log(half)
    if n == 0:
        # sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k / (k!)^2
        total = 0.0 * z
        term = 0.0 * z + 1.0
        harmonic = 0.0
        small = 0
        for k in range(1, config.max_terms):
            term = term * w / (k * k)
            harmonic += 1.0 / k
            inc = -harmonic * term
            total = total + inc
            if J.magnitude(inc) <= config.series_tol * max(J.magnitude(total), J.magnitude(jn)):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        else:
            raise ConvergenceError("Y0 series did not converge")
        return (2.0 / math.pi) * ((lg + EULER_GAMMA) * jn + total)
    # Y1: -2/(pi z) + (2/pi) ln(z/2) J1 - (1/pi) sum_k (psi(k+1)+psi(k+2)) w^k (z/2)/(k!(k+1)!)
    total = 0.0 * z
    term = half
    psi1 = -EULER_GAMMA
    psi2 = 1.0 - EULER_GAMMA
    total = total + (psi1 + psi2) * term
    small = 0
    for k in range(1, config.max_terms):
        term = term * w / (k * (k + 1))
        psi1 += 1.0 / k
        psi2 += 1.0 / (k + 1)
        inc = (psi1 + psi2) * term
        total = total + inc
        if J.magnitude(inc) <= config.series_tol * max(J.magnitude(total), J.magnitude(jn)):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise ConvergenceError("Y1 series did not converge")
    return -2.0 / (math.pi * z) + (2.0 / math.pi) * lg * jn - total / math.pi


def erfi(z, config=DEFAULT):
    """Imaginary error function ``-i erf(iz)`` for ``|z| <= 6``."""
    if abs(J.value(z)) > 6.0:
        raise ConvergenceError("erfi implemented for |z| <= 6 only")
    z2 = z * z
    # sum_n z^(2n+1) / (n! (2n+1)), carried as t_n = z^(2n+1)/n!
    total = z
    term = z
    small = 0
    for n in range(1, config.max_terms):
        term = term * z2 / n
        inc = term / (2 * n + 1)
        total = total + inc
        if J.magnitude(inc) <= config.series_tol * J.magnitude(total):
            small += 1
            if small >= 3:
                return (2.0 / math.sqrt(math.pi)) * total
        else:
            small = 0
    raise ConvergenceError("erfi series did not converge")


def inc_gamma_upper_one_third(w, config=DEFAULT):
    """Upper incomplete gamma ``Gamma(1/3, w)`` for ``|w| <= 10``.

    Computed as ``Gamma(1/3) - w**(1/3) * sum_n (-w)^n / (n! (n + 1/3))`` with
    the principal branch of ``w**(1/3)``.
    """
    w0 = J.value(w)
    if abs(w0) > 10.0:
        raise ConvergenceError("Gamma(1/3, w) implemented for |w| <= 10 only")
    s = 1.0 / 3.0
    if w0 == 0:
        if isinstance(w, J.Jet):
            raise DomainError("Gamma(1/3, w) is not differentiable at w = 0")
        return complex(GAMMA_ONE_THIRD)
    total = w * 0 + 1.0 / s
    term = w * 0 + 1.0
    small = 0
    for n in range(1, config.max_terms):
        term = term * (-w) / n
        inc = term / (n + s)
        total = total + inc
        if J.magnitude(inc) <= config.series_tol * J.magnitude(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise ConvergenceError("incomplete gamma series did not converge")
    return GAMMA_ONE_THIRD - J.power(w, s) * total
