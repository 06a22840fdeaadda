"""Time-integrated secular coefficients.

For each oscillator, five weighted integrals of the diffusion coefficients
enter the covariance blocks:

    delta_gamma(t) = Int_0^t delta(s) ds
    delta_co(t)    = Int_0^t delta(s) cos[2 r (t - s)] ds
    delta_si(t)    = Int_0^t delta(s) sin[2 r (t - s)] ds
    pi_co(t)       = Int_0^t pi(s)    cos[2 r (t - s)] ds
    pi_si(t)       = Int_0^t pi(s)    sin[2 r (t - s)] ds

where r is the oscillator frequency in cutoff units and the weights oscillate
at twice that frequency. (The sin-weighted pi integral completes the cos/sin
pattern of the other pairs.) secular_set evaluates the five integrals one tau
at a time with the package's adaptive quadrature; SecularAccumulator serves
whole ascending time grids by accumulating fixed-order panel integrals of the
absolute-phase primitives and recombining the trig factors at evaluation
time. The accumulator also evaluates between grid points by extending the
partial panel from the nearest grid point below, so root refinement sees the
same continuous function that produced the grid samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .numerics import ConvergenceError, integrate_adaptive
from .params import ValidatedConfig, oscillator_frequency

SECULAR_ABS_TOL = 1e-10

# Target phase advance per Gauss-Legendre sub-panel, radians. The integrands
# oscillate no faster than 3 r (kernel frequency r beats against the weight
# frequency 2 r), so sub-panels are sized to keep 8-node panels far inside
# their exactness range even on coarse grids.
_MAX_PANEL_PHASE = 0.5
_GL_NODES = 8


@dataclass(frozen=True)
class SecularSet:
    """The five secular integrals for one oscillator at one time."""

    delta_gamma: float
    delta_co: float
    delta_si: float
    pi_co: float
    pi_si: float
    tau: float
    oscillator: int


def secular_set(tau: float, oscillator: int, config: ValidatedConfig,
                abs_tol: float = SECULAR_ABS_TOL) -> SecularSet:
    """Evaluate the five integrals at one tau by adaptive quadrature.

    Raises ConvergenceError naming the coefficient if the quadrature fails to
    meet tolerance.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    if tau == 0.0:
        return SecularSet(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, oscillator)

    w = oscillator_frequency(config, oscillator)
    alpha = config.alpha
    temp = config.temp_ratio
    two_w = 2.0 * w
    max_freq = 3.0 * w + 1.0

    def delta(s: float) -> float:
        return kernels.delta_coeff(s, w, alpha, temp)

    def pi(s: float) -> float:
        return kernels.pi_coeff(s, w, alpha, temp)

    integrands = {
        "delta_gamma": lambda s: delta(s),
        "delta_co": lambda s: delta(s) * math.cos(two_w * (tau - s)),
        "delta_si": lambda s: delta(s) * math.sin(two_w * (tau - s)),
        "pi_co": lambda s: pi(s) * math.cos(two_w * (tau - s)),
        "pi_si": lambda s: pi(s) * math.sin(two_w * (tau - s)),
    }
    values = {}
    for name, f in integrands.items():
        result = integrate_adaptive(f, 0.0, tau, abs_tol=abs_tol,
                                    rel_tol=0.0, max_frequency=max_freq)
        if not result.converged:
            raise ConvergenceError(
                f"secular coefficient {name} did not converge at tau={tau:g} "
                f"(error estimate {result.error_estimate:g})"
            )
        values[name] = result.value
    return SecularSet(tau=tau, oscillator=oscillator, **values)


class SecularAccumulator:
    """Grid-incremental evaluation of the five secular integrals.

    The (t - s) trig weights unfold into absolute-phase primitives:

        delta_co(t) = cos(2rt) Int delta cos(2rs) + sin(2rt) Int delta sin(2rs)
        delta_si(t) = sin(2rt) Int delta cos(2rs) - cos(2rt) Int delta sin(2rs)

    and likewise for pi. The five primitive running integrals are accumulated
    once over the grid with 8-node Gauss-Legendre sub-panels, after which any
    evaluation costs a table lookup, an optional partial panel for off-grid
    tau, and one trig recombination.
    """

    def __init__(self, taus: np.ndarray, w_osc: float, alpha: float,
                 temp_ratio: float, oscillator: int = 0):
        taus = np.asarray(taus, dtype=float)
        if taus.ndim != 1 or taus.size < 2:
            raise ValueError("taus must be a one-dimensional grid of at least two points")
        if taus[0] != 0.0:
            raise ValueError(f"the grid must start at tau=0, got {taus[0]}")
        steps = np.diff(taus)
        if np.any(steps <= 0.0):
            raise ValueError("taus must be strictly increasing")

        self.taus = taus
        self.w = float(w_osc)
        self.alpha = float(alpha)
        self.temp_ratio = float(temp_ratio)
        self.oscillator = oscillator

        nodes, weights = np.polynomial.legendre.leggauss(_GL_NODES)
        self._gl_nodes = nodes
        self._gl_weights = weights

        max_freq = 3.0 * self.w + 1.0
        subdiv = max(1, math.ceil(float(steps.max()) * max_freq / _MAX_PANEL_PHASE))
        # Sub-panel edges per grid panel, shape (panels, subdiv + 1).
        frac = np.linspace(0.0, 1.0, subdiv + 1)
        edges = taus[:-1, None] + steps[:, None] * frac[None, :]
        edges[:, -1] = taus[1:]
        lo = edges[:, :-1]
        hi = edges[:, 1:]
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        s = mid[..., None] + half[..., None] * nodes          # (panels, subdiv, n)
        ws = half[..., None] * weights                        # (panels, subdiv, n)

        d = kernels.delta_coeff(s, self.w, self.alpha, self.temp_ratio)
        p = kernels.pi_coeff(s, self.w, self.alpha, self.temp_ratio)
        c2 = np.cos(2.0 * self.w * s)
        s2 = np.sin(2.0 * self.w * s)

        def cumulative(integrand):
            panel_sums = (integrand * ws).sum(axis=(1, 2))
            out = np.empty(taus.size)
            out[0] = 0.0
            np.cumsum(panel_sums, out=out[1:])
            return out

        self._int_d = cumulative(d)
        self._int_dc = cumulative(d * c2)
        self._int_ds = cumulative(d * s2)
        self._int_pc = cumulative(p * c2)
        self._int_ps = cumulative(p * s2)

    def _partial(self, lo: float, hi: float) -> tuple[float, float, float, float, float]:
        """Primitive integrals over [lo, hi] with the same panel rule."""
        width = hi - lo
        if width == 0.0:
            return 0.0, 0.0, 0.0, 0.0, 0.0
        max_freq = 3.0 * self.w + 1.0
        subdiv = max(1, math.ceil(width * max_freq / _MAX_PANEL_PHASE))
        edges = np.linspace(lo, hi, subdiv + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        s = mid[:, None] + half[:, None] * self._gl_nodes
        ws = half[:, None] * self._gl_weights
        d = kernels.delta_coeff(s, self.w, self.alpha, self.temp_ratio)
        p = kernels.pi_coeff(s, self.w, self.alpha, self.temp_ratio)
        c2 = np.cos(2.0 * self.w * s)
        s2 = np.sin(2.0 * self.w * s)
        return (
            float((d * ws).sum()),
            float((d * c2 * ws).sum()),
            float((d * s2 * ws).sum()),
            float((p * c2 * ws).sum()),
            float((p * s2 * ws).sum()),
        )

    def values_at(self, tau: float) -> SecularSet:
        """The five coefficients at any tau inside the grid window.

        At grid points this reproduces the accumulated values bitwise (the
        partial panel is empty); between points it extends the running
        primitives from the grid point below, so the function is continuous
        and consistent with the grid samples.
        """
        taus = self.taus
        if tau < 0.0:
            raise ValueError(f"tau must be non-negative, got {tau}")
        if tau > taus[-1]:
            raise ValueError(f"tau={tau} is beyond the grid end {taus[-1]}")
        k = int(np.searchsorted(taus, tau, side="right") - 1)
        if k >= taus.size - 1:
            k = taus.size - 2 if tau < taus[-1] else taus.size - 1
        base = (self._int_d[k], self._int_dc[k], self._int_ds[k],
                self._int_pc[k], self._int_ps[k])
        part = self._partial(taus[k], tau) if tau > taus[k] else (0.0,) * 5
        int_d, int_dc, int_ds, int_pc, int_ps = (b + q for b, q in zip(base, part))

        phase = 2.0 * self.w * tau
        co = np.cos(phase)
        si = np.sin(phase)
        return SecularSet(
            delta_gamma=float(int_d),
            delta_co=float(co * int_dc + si * int_ds),
            delta_si=float(si * int_dc - co * int_ds),
            pi_co=float(co * int_pc + si * int_ps),
            pi_si=float(si * int_pc - co * int_ps),
            tau=float(tau),
            oscillator=self.oscillator,
        )
