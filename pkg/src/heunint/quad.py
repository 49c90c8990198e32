"""Adaptive Simpson quadrature for complex-valued integrands on a real interval."""

from dataclasses import dataclass

from .errors import ConvergenceError


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    evaluations: int


def integrate_adaptive(f, a, b, tol=1e-10, max_depth=30):
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson subdivision.

    Real and imaginary parts share one subdivision. A panel is accepted when
    the two-half Simpson estimate differs from the whole-panel estimate by at
    most ``15 * eps``, where ``eps`` starts at ``tol * max(1, |coarse estimate|)``
    and halves with each split. The accepted value carries the usual
    Richardson correction.

    Raises :class:`ConvergenceError` (with ``best`` set to the summed
    estimate) when a panel is still unresolved at ``max_depth``.
    """
    a = float(a)
    b = float(b)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadResult(0j, 0.0, 0)
    if a > b:
        res = integrate_adaptive(f, b, a, tol, max_depth)
        return QuadResult(-res.value, res.err_estimate, res.evaluations)

    fa, fm, fb = complex(f(a)), complex(f(0.5 * (a + b))), complex(f(b))
    evals = 3
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    eps0 = tol * max(1.0, abs(whole))

    total = 0j
    err = 0.0
    unresolved = False
    stack = [(a, b, fa, fm, fb, whole, eps0, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = complex(f(0.5 * (lo + mid)))
        fr = complex(f(0.5 * (mid + hi)))
        evals += 2
        h = (hi - lo) / 12.0
        left = h * (flo + 4.0 * fl + fmid)
        right = h * (fmid + 4.0 * fr + fhi)
        diff = left + right - s
        if abs(diff) <= 15.0 * eps or depth >= max_depth:
            if abs(diff) > 15.0 * eps:
                unresolved = True
            total += left + right + diff / 15.0
            err += abs(diff) / 15.0
            continue
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * eps, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * eps, depth + 1))

    result = QuadResult(total, err, evals)
    if unresolved:
        raise ConvergenceError(
            f"subdivision depth {max_depth} exceeded on [{a}, {b}]", best=result
        )
    return result
