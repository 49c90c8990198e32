"""Truncated Taylor series ("jets") with complex coefficients.

A :class:`Jet` of order ``N`` at basepoint ``x0`` stores the first ``N + 1``
Taylor coefficients ``f(x0), f'(x0), f''(x0)/2!, ...`` of a function.
Arithmetic and the elementary functions below return the truncated series
of the pointwise result, so building ``F(Jet.variable(x0, N))`` yields every
derivative of ``F`` at ``x0`` up to order ``N`` without finite differences.

The module-level functions :func:`exp`, :func:`log`, :func:`power`, ... accept
either a :class:`Jet` or a plain number. Formulas written with them evaluate
on scalars (fast path, used by quadrature) and on jets (derivatives) alike.

Branch policy: principal logarithm everywhere. A real negative argument is
always taken with imaginary part ``+0.0`` so that ``log(-r) = ln r + i*pi``,
regardless of how the zero imaginary part was produced.
"""

import cmath
import numbers

import numpy as np

from .errors import DomainError


def _clean(z):
    z = complex(z)
    if z.imag == 0.0:
        return complex(z.real, 0.0)
    return z


def _clog(z):
    z = _clean(z)
    if z == 0:
        raise DomainError("logarithm of zero")
    return cmath.log(z)


class Jet:
    """Order-``N`` truncated Taylor expansion of a function at ``x0``.

    Instances are immutable; every operation returns a new jet. Mixing jets
    of different orders truncates to the lower order. Mixing basepoints is an
    error.
    """

    __slots__ = ("x0", "coeffs")
    __array_ufunc__ = None  # make numpy scalars defer to Jet operators

    def __init__(self, coeffs, x0=0.0):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("jet needs a non-empty 1-d coefficient list")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "x0", complex(x0))

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @classmethod
    def variable(cls, x0, order):
        """The identity function ``x`` expanded at ``x0``."""
        c = np.zeros(order + 1, dtype=complex)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c, x0)

    @classmethod
    def constant(cls, value, x0, order):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c, x0)

    @property
    def order(self):
        return self.coeffs.size - 1

    @property
    def value(self):
        return complex(self.coeffs[0])

    def derivative(self, k=1):
        """``k``-th derivative of the represented function at ``x0``."""
        if k > self.order:
            raise ValueError(f"order {self.order} jet has no derivative {k}")
        fact = 1.0
        for i in range(2, k + 1):
            fact *= i
        return complex(self.coeffs[k]) * fact

    def deriv(self):
        """Jet of the derivative function; its order is one lower."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        n = np.arange(1, self.order + 1)
        return Jet(self.coeffs[1:] * n, self.x0)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        return Jet(self.coeffs[: order + 1], self.x0)

    def __call__(self, dx):
        """Evaluate the truncated polynomial at ``x0 + dx``."""
        return complex(np.polyval(self.coeffs[::-1], dx))

    def __repr__(self):
        return f"Jet(x0={self.x0!r}, coeffs={list(self.coeffs)!r})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.x0 != self.x0:
                raise ValueError(
                    f"jets at different basepoints: {self.x0} vs {other.x0}"
                )
            n = min(self.order, other.order)
            return self.coeffs[: n + 1], other.coeffs[: n + 1]
        if isinstance(other, numbers.Number):
            return None
        return NotImplemented

    def __neg__(self):
        return Jet(-self.coeffs, self.x0)

    def __pos__(self):
        return self

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        if pair is None:
            c = self.coeffs.copy()
            c[0] += other
            return Jet(c, self.x0)
        return Jet(pair[0] + pair[1], self.x0)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        if pair is None:
            return Jet(self.coeffs * other, self.x0)
        a, b = pair
        return Jet(np.convolve(a, b)[: a.size], self.x0)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        if pair is None:
            return Jet(self.coeffs / other, self.x0)
        return Jet(_series_div(*pair), self.x0)

    def __rtruediv__(self, other):
        if not isinstance(other, numbers.Number):
            return NotImplemented
        num = np.zeros(self.coeffs.size, dtype=complex)
        num[0] = other
        return Jet(_series_div(num, self.coeffs), self.x0)

    def __pow__(self, p):
        if isinstance(p, numbers.Integral) or (
            isinstance(p, float) and p.is_integer() and abs(p) < 2**31
        ):
            return _int_power(self, int(p))
        if isinstance(p, numbers.Number):
            return jet_elem("pow", self, c=p)
        return NotImplemented


def _series_div(a, b):
    if b[0] == 0:
        raise DomainError("division by a jet with zero constant term")
    n = a.size
    q = np.zeros(n, dtype=complex)
    b0 = b[0]
    for k in range(n):
        q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b0
    return q


def _int_power(a, p):
    if p < 0:
        return 1.0 / _int_power(a, -p)
    result = Jet.constant(1.0, a.x0, a.order)
    base = a
    while p:
        if p & 1:
            result = result * base
        p >>= 1
        if p:
            base = base * base
    return result


def jet_arith(kind, a, b):
    """Apply ``add``, ``sub``, ``mul`` or ``div`` to two jets."""
    if a.x0 != b.x0 or a.order != b.order:
        raise ValueError("jet_arith needs equal basepoints and orders")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown jet operation {kind!r}")


def jet_elem(kind, a, c=None):
    """Compose an elementary function with a jet.

    ``kind`` is one of ``exp, log, pow, sqrt, sin, cos, arctan``; ``pow``
    takes the complex exponent ``c``. Principal branches throughout.
    """
    x = a.coeffs
    n = x.size
    out = np.zeros(n, dtype=complex)
    ks = np.arange(n)
    if kind == "exp":
        out[0] = cmath.exp(x[0])
        for k in range(1, n):
            j = ks[1 : k + 1]
            out[k] = np.dot(j * x[1 : k + 1], out[k - 1 :: -1][:k]) / k
        return Jet(out, a.x0)
    if kind == "log":
        if x[0] == 0:
            raise DomainError("log of a jet with zero constant term")
        out[0] = _clog(x[0])
        for k in range(1, n):
            j = ks[1:k]
            s = np.dot(j * out[1:k], x[k - 1 : 0 : -1]) if k > 1 else 0.0
            out[k] = (x[k] - s / k) / x[0]
        return Jet(out, a.x0)
    if kind in ("pow", "sqrt"):
        if kind == "sqrt":
            c = 0.5
        if c is None:
            raise ValueError("pow needs an exponent")
        if x[0] == 0:
            raise DomainError(f"{kind} of a jet with zero constant term")
        c = complex(c)
        out[0] = cmath.sqrt(_clean(x[0])) if kind == "sqrt" else cmath.exp(
            c * _clog(x[0])
        )
        for k in range(1, n):
            j = ks[1 : k + 1]
            w = (c * j - (k - j)) * x[1 : k + 1]
            out[k] = np.dot(w, out[k - 1 :: -1][:k]) / (k * x[0])
        return Jet(out, a.x0)
    if kind in ("sin", "cos"):
        s = np.zeros(n, dtype=complex)
        co = np.zeros(n, dtype=complex)
        s[0] = cmath.sin(x[0])
        co[0] = cmath.cos(x[0])
        for k in range(1, n):
            jx = ks[1 : k + 1] * x[1 : k + 1]
            s[k] = np.dot(jx, co[k - 1 :: -1][:k]) / k
            co[k] = -np.dot(jx, s[k - 1 :: -1][:k]) / k
        return Jet(s if kind == "sin" else co, a.x0)
    if kind == "arctan":
        out[0] = cmath.atan(x[0])
        if n > 1:
            lower = a.truncate(n - 2)
            w = a.deriv() / (1.0 + lower * lower)
            out[1:] = w.coeffs / ks[1:]
        return Jet(out, a.x0)
    raise ValueError(f"unknown elementary function {kind!r}")


# -- scalar/jet polymorphic helpers -------------------------------------------


def exp(z):
    return jet_elem("exp", z) if isinstance(z, Jet) else cmath.exp(z)


def log(z):
    return jet_elem("log", z) if isinstance(z, Jet) else _clog(z)


def sqrt(z):
    return jet_elem("sqrt", z) if isinstance(z, Jet) else cmath.sqrt(_clean(z))


def sin(z):
    return jet_elem("sin", z) if isinstance(z, Jet) else cmath.sin(z)


def cos(z):
    return jet_elem("cos", z) if isinstance(z, Jet) else cmath.cos(z)


def arctan(z):
    return jet_elem("arctan", z) if isinstance(z, Jet) else cmath.atan(z)


def power(z, c):
    """Principal ``z**c``; integer exponents use repeated multiplication."""
    if isinstance(c, numbers.Integral):
        return z**c
    if isinstance(z, Jet):
        return jet_elem("pow", z, c=c)
    z = _clean(z)
    if z == 0:
        raise DomainError("zero base in complex power")
    return cmath.exp(complex(c) * cmath.log(z))


def value(z):
    """Constant coefficient of a jet, or the number itself."""
    return z.value if isinstance(z, Jet) else complex(z)


def magnitude(z):
    """Largest coefficient modulus (jets) or modulus (numbers)."""
    if isinstance(z, Jet):
        return float(np.max(np.abs(z.coeffs)))
    return abs(z)


def derivative_fd(f, x, h):
    """Central difference ``(f(x+h) - f(x-h)) / (2h)``."""
    return (f(x + h) - f(x - h)) / (2.0 * h)
