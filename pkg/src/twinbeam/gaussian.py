"""Two-mode Gaussian covariance matrices and their time evolution.

The initial state is a twin beam with squeezing r: block-diagonal
single-mode parts a*I and an off-diagonal block diag(c, -c), with
a = cosh(2r)/2 and c = sinh(2r)/2, in quadrature ordering (x1, p1, x2, p2).

Under independent hot baths each single-mode block contracts by
e^{-Gamma_i(tau)} and picks up the secular heating matrix

    [[D_i, E_i], [E_i, D_i]],  D_i = delta_gamma + delta_co - pi_si,
                               E_i = -delta_si + pi_co

(by default; see diag_mode below), while the off-diagonal block is the
initial one, damped by e^{-(Gamma_1+Gamma_2)} and rotated at the summed
oscillator frequency:

    C(tau) = e^{-(Gamma_1+Gamma_2)} C(0) R(theta),
    R(theta) = [[cos theta, sin theta], [-sin theta, cos theta]],
    theta = (r_1 + r_2) tau.

At tau = 0 every coefficient vanishes and the construction reduces exactly
to the initial covariance. No physicality repair is applied to the evolved
matrix: the short-time solution may leave the physical regime at large tau,
and the separability module reports that instead of masking it.

diag_mode selects the secular structure of the single-mode diagonals:
"equal" (default) puts D_i on both the xx and pp entries; "split" carries
the oscillating parts with opposite signs, xx getting
delta_gamma + delta_co - pi_si and pp getting delta_gamma - delta_co + pi_si.
The two variants coincide at tau = 0 and differ only in how the breathing of
the quadrature variances is distributed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .kernels import big_gamma
from .params import DIAG_MODES, ValidatedConfig
from .secular import SecularSet, secular_set


def _frozen(matrix: np.ndarray) -> np.ndarray:
    out = np.array(matrix, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Blocks of a two-mode covariance matrix in (x1, p1, x2, p2) ordering.

    a1 and a2 are the single-mode blocks, c the upper-right cross block; the
    assembled 4x4 matrix carries c and its transpose, so it is symmetric
    whenever the single-mode blocks are.
    """

    a1: np.ndarray
    a2: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        for name in ("a1", "a2", "c"):
            block = np.asarray(getattr(self, name), dtype=float)
            if block.shape != (2, 2):
                raise ValueError(f"block {name} must be 2x2, got shape {block.shape}")
            if not np.all(np.isfinite(block)):
                raise ValueError(f"block {name} contains non-finite entries")
            object.__setattr__(self, name, _frozen(block))

    @property
    def matrix(self) -> np.ndarray:
        """The assembled 4x4 covariance matrix."""
        full = np.block([[self.a1, self.c], [self.c.T, self.a2]])
        full.setflags(write=False)
        return full


def twb_covariance(r: float) -> CovarianceMatrix:
    """Initial twin-beam covariance for squeezing r >= 0.

    r = 0 gives the two-mode vacuum, covariance identity/2. For any r the
    state is pure: det of the 4x4 matrix is 1/16.
    """
    if r < 0.0:
        raise ValueError(f"squeezing r must be non-negative, got {r}")
    a = 0.5 * math.cosh(2.0 * r)
    c = 0.5 * math.sinh(2.0 * r)
    eye = np.array([[a, 0.0], [0.0, a]])
    cross = np.array([[c, 0.0], [0.0, -c]])
    return CovarianceMatrix(a1=eye, a2=eye.copy(), c=cross)


SecularProvider = Callable[[float, int], SecularSet]


def _heated_block(a0: float, decay: float, sec: SecularSet, diag_mode: str) -> np.ndarray:
    e = -sec.delta_si + sec.pi_co
    d_xx = sec.delta_gamma + sec.delta_co - sec.pi_si
    if diag_mode == "equal":
        d_pp = d_xx
    else:
        d_pp = sec.delta_gamma - sec.delta_co + sec.pi_si
    base = a0 * decay
    return np.array([[base + d_xx, e], [e, base + d_pp]])


def propagate(config: ValidatedConfig, tau: float, *,
              diag_mode: str = "equal",
              secular_provider: Optional[SecularProvider] = None) -> CovarianceMatrix:
    """Time-evolved covariance of the twin beam under independent hot baths.

    secular_provider supplies the five secular integrals per oscillator; it
    defaults to direct quadrature (secular_set) and is replaced by a grid
    accumulator when whole traces are computed. With alpha = 0 all
    coefficients vanish and the state just rotates: the single-mode blocks
    stay at their initial value and the cross block keeps |det| = c^2.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    if diag_mode not in DIAG_MODES:
        raise ValueError(f"diag_mode must be one of {DIAG_MODES}, got {diag_mode!r}")
    provider = secular_provider
    if provider is None:
        provider = lambda t, osc: secular_set(t, osc, config)

    gamma_1 = big_gamma(tau, config.r1, config.alpha)
    gamma_2 = big_gamma(tau, config.r2, config.alpha)
    a0 = 0.5 * math.cosh(2.0 * config.r)
    c0 = 0.5 * math.sinh(2.0 * config.r)

    a1 = _heated_block(a0, math.exp(-gamma_1), provider(tau, 1), diag_mode)
    a2 = _heated_block(a0, math.exp(-gamma_2), provider(tau, 2), diag_mode)

    theta = (config.r1 + config.r2) * tau
    fade = math.exp(-(gamma_1 + gamma_2))
    p = c0 * fade * math.cos(theta)
    q = c0 * fade * math.sin(theta)
    cross = np.array([[p, q], [q, -p]])
    return CovarianceMatrix(a1=a1, a2=a2, c=cross)
