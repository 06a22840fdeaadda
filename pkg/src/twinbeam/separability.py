"""Separability function and symplectic diagnostics for two-mode Gaussian states.

The state with covariance blocks A1, A2, C is entangled exactly when the
separability function

    S = det A1 det A2 + (1/4 - |det C|)^2
        - Tr[A1 J C J A2 J C^T J] - (det A1 + det A2)/4,
    J = [[0, 1], [-1, 0]],

is negative. S = 0 is the boundary; the two-mode vacuum sits exactly on it.
Everything here is plain 2x2 arithmetic on the blocks; simon_from_dense
recomputes S by slicing a full 4x4 matrix instead and exists as an
independent route for cross-checking the blockwise evaluation.

Physicality of an evolved matrix is diagnosed, never enforced: the smaller
symplectic eigenvalue nu_minus must be at least 1/2 for a genuine quantum
state, and the short-time evolution can drift below that at large tau.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .gaussian import CovarianceMatrix

SYMPLECTIC_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
SYMPLECTIC_J.setflags(write=False)

# Slack on the uncertainty bound nu_minus >= 1/2 before a state is flagged
# unphysical, and on the discriminant before the eigenvalues are flagged
# complex. Both absorb harmless rounding.
PHYSICALITY_TOL = 1e-9

# Discriminants this close to zero (relative to the invariant scale) are
# treated as exactly degenerate. The square root turns eps-level noise in
# inv^2 - 4 det sigma into sqrt(eps)-level splitting of nu_plus/minus, so a
# pure state such as the initial two-mode squeezed vacuum would otherwise be
# misflagged as violating the uncertainty bound.
DEGENERACY_EPS = 1e-13


def _det2(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def simon_separability(sigma: CovarianceMatrix) -> float:
    """Separability function of a two-mode covariance; negative means entangled."""
    a1, a2, c = sigma.a1, sigma.a2, sigma.c
    det_a1 = _det2(a1)
    det_a2 = _det2(a2)
    det_c = _det2(c)
    j = SYMPLECTIC_J
    chain = a1 @ j @ c @ j @ a2 @ j @ c.T @ j
    trace_term = float(chain[0, 0] + chain[1, 1])
    return (det_a1 * det_a2
            + (0.25 - abs(det_c)) ** 2
            - trace_term
            - 0.25 * (det_a1 + det_a2))


def simon_from_dense(matrix: np.ndarray) -> float:
    """Separability function from an assembled 4x4 matrix.

    Independent of the blockwise path: blocks are sliced from the dense
    matrix and the determinants go through the general-purpose routine.
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    a1 = m[:2, :2]
    a2 = m[2:, 2:]
    c = m[:2, 2:]
    det_a1 = float(np.linalg.det(a1))
    det_a2 = float(np.linalg.det(a2))
    det_c = float(np.linalg.det(c))
    j = SYMPLECTIC_J
    trace_term = float(np.trace(a1 @ j @ c @ j @ a2 @ j @ c.T @ j))
    return (det_a1 * det_a2
            + (0.25 - abs(det_c)) ** 2
            - trace_term
            - 0.25 * (det_a1 + det_a2))


class SymplecticEigenvalues(NamedTuple):
    """Symplectic spectrum of a two-mode covariance plus diagnostic flags.

    real is False when the invariant discriminant is negative beyond
    tolerance (formally complex eigenvalues); physical is False when
    nu_minus falls below the 1/2 uncertainty bound. Neither condition is an
    error: both mark where the approximate evolution leaves the physical
    regime.
    """

    nu_minus: float
    nu_plus: float
    physical: bool
    real: bool


def symplectic_eigenvalues(sigma: CovarianceMatrix) -> SymplecticEigenvalues:
    """Symplectic eigenvalues via the two-mode invariants.

    nu_plus/minus squared are (inv +- sqrt(inv^2 - 4 det sigma)) / 2 with
    inv = det A1 + det A2 + 2 det C. Negative discriminant or negative
    squared eigenvalues are clamped to zero and flagged rather than raised.
    """
    det_a1 = _det2(sigma.a1)
    det_a2 = _det2(sigma.a2)
    det_c = _det2(sigma.c)
    invariant = det_a1 + det_a2 + 2.0 * det_c
    det_sigma = float(np.linalg.det(sigma.matrix))
    disc = invariant * invariant - 4.0 * det_sigma
    if abs(disc) <= DEGENERACY_EPS * max(1.0, invariant * invariant):
        disc = 0.0
    real = disc >= -PHYSICALITY_TOL
    root = float(np.sqrt(max(disc, 0.0)))
    nu2_minus = 0.5 * (invariant - root)
    nu2_plus = 0.5 * (invariant + root)
    nu_minus = float(np.sqrt(max(nu2_minus, 0.0)))
    nu_plus = float(np.sqrt(max(nu2_plus, 0.0)))
    physical = real and nu_minus >= 0.5 - PHYSICALITY_TOL
    return SymplecticEigenvalues(nu_minus, nu_plus, physical, real)
