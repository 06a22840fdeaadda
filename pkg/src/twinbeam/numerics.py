"""One-dimensional adaptive quadrature and bracketed root refinement.

Both routines are deliberately plain: adaptive Simpson with local error
control for the integrals (every integrand in this package is smooth, at
worst a mildly oscillatory product of exponentials and trig factors), and
bisection for roots. Callers that integrate an oscillatory function pass its
fastest angular frequency so the interval is pre-split per half period before
adaptive refinement; that prevents the error estimator from stepping over
whole oscillations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-10
DEFAULT_MAX_DEPTH = 48


class ConvergenceError(RuntimeError):
    """Raised by callers that refuse a non-converged quadrature result."""


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of one integration.

    error_estimate is an absolute estimate accumulated from the accepted
    panels; converged is False when some panel hit max_depth before meeting
    its local tolerance, in which case the value is still the best available
    estimate and the caller decides whether to accept it.
    """

    value: float
    error_estimate: float
    evaluations: int
    converged: bool


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h * (fa + 4.0 * fm + fb) / 6.0


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_frequency: float = 0.0,
) -> QuadratureResult:
    """Integrate f over [a, b] to absolute tolerance abs_tol.

    The interval is split into panels (one per half period of max_frequency
    when given, otherwise a single panel) and each panel is bisected
    recursively until the Simpson error estimate |S2 - S1|/15 meets the
    local share of the tolerance. rel_tol contributes through the running
    panel magnitude, so large integrals are not over-resolved.
    """
    if abs_tol <= 0.0:
        raise ValueError(f"abs_tol must be positive, got {abs_tol}")
    if a > b:
        raise ValueError(f"integration bounds must satisfy a <= b, got [{a}, {b}]")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0, True)

    span = b - a
    n_panels = 1
    if max_frequency > 0.0:
        n_panels = max(1, math.ceil(span * max_frequency / math.pi))

    evaluations = 0

    def call(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        y = float(f(x))
        if not math.isfinite(y):
            raise ValueError(f"integrand returned a non-finite value at x={x!r}")
        return y

    total = 0.0
    total_err = 0.0
    converged = True

    edges = [a + span * k / n_panels for k in range(n_panels + 1)]
    edges[-1] = b
    for left, right in zip(edges[:-1], edges[1:]):
        width = right - left
        tol_here = abs_tol * (width / span)
        fl = call(left)
        fm = call(0.5 * (left + right))
        fr = call(right)
        whole = _simpson(fl, fm, fr, width)
        # Work list of (left, right, f(left), f(mid), f(right), coarse
        # Simpson value, local tolerance, depth).
        stack = [(left, right, fl, fm, fr, whole, tol_here, 0)]
        while stack:
            x0, x1, f0, f1, f2, coarse, tol, depth = stack.pop()
            xm = 0.5 * (x0 + x1)
            xl = 0.5 * (x0 + xm)
            xr = 0.5 * (xm + x1)
            fml = call(xl)
            fmr = call(xr)
            h = xm - x0
            s_left = _simpson(f0, fml, f1, h)
            s_right = _simpson(f1, fmr, f2, h)
            fine = s_left + s_right
            err = abs(fine - coarse) / 15.0
            accept = err <= max(tol, rel_tol * abs(fine)) or xl <= x0 or xr >= x1
            if not accept and depth >= max_depth:
                accept = True
                converged = False
            if accept:
                # Richardson step: the two-panel value plus the estimated
                # correction is one order better than either Simpson value.
                total += fine + (fine - coarse) / 15.0
                total_err += err
            else:
                stack.append((x0, xm, f0, fml, f1, s_left, tol / 2.0, depth + 1))
                stack.append((xm, x1, f1, fmr, f2, s_right, tol / 2.0, depth + 1))

    return QuadratureResult(total, total_err, evaluations, converged)


def refine_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
) -> float:
    """Shrink a sign-change bracket [lo, hi] to width <= tol by bisection.

    Returns the midpoint of the final bracket, which is within tol of a root.
    Endpoints that evaluate exactly to zero are returned directly. Rejects
    input that does not bracket a sign change.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got [{lo}, {hi}]")
    f_lo = float(f(lo))
    f_hi = float(f(hi))
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise ValueError(
            f"interval [{lo}, {hi}] does not bracket a sign change "
            f"(f(lo)={f_lo:g}, f(hi)={f_hi:g})"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = float(f(mid))
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)
