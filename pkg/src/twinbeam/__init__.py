"""Short-time entanglement dynamics of two detuned harmonic oscillators.

The model: a two-mode squeezed vacuum shared between two harmonic
oscillators whose frequencies sit at different points relative to a common
reservoir cutoff, each oscillator coupled to its own hot Ohmic bath with a
Lorentz-Drude cutoff. Everything is worked in dimensionless time (cutoff
rate times lab time) and weak coupling, where the reduced dynamics stays
Gaussian and is captured by time-dependent drift and diffusion coefficients.

The package computes those coefficients in closed form, validates them
against a direct double-quadrature oracle, propagates the covariance
matrix, and classifies the entanglement history of the pair: sudden death,
oscillations, revivals, or survival over the observation window, using the
sign of a separability function that is negative exactly when the Gaussian
state is entangled.

Public surface: configuration types in :mod:`twinbeam.params`, coefficient
routes in :mod:`twinbeam.kernels` and :mod:`twinbeam.secular`, state
propagation in :mod:`twinbeam.gaussian`, the separability criterion in
:mod:`twinbeam.separability`, trace/event/sweep drivers in
:mod:`twinbeam.analysis`, and a CLI in :mod:`twinbeam.cli`.
"""

__version__ = "0.1.0"

from .analysis import (
    EntanglementEvents,
    SeparabilityTrace,
    SweepRow,
    compute_trace,
    detect_events,
    final_death,
    local_extrema_count,
    sweep,
    time_grid,
)
from .gaussian import CovarianceMatrix, propagate, twb_covariance
from .kernels import (
    CoefficientSet,
    big_gamma,
    coefficient_set,
    delta_coeff,
    gamma_coeff,
    oracle_coefficient,
    pi_coeff,
    spectral_density,
)
from .numerics import (
    ConvergenceError,
    QuadratureResult,
    integrate_adaptive,
    refine_root,
)
from .params import (
    ConfigError,
    GridConfig,
    PhysicalConfig,
    ValidatedConfig,
    oscillator_frequency,
    validate,
)
from .secular import SecularAccumulator, SecularSet, secular_set
from .separability import (
    SymplecticEigenvalues,
    simon_from_dense,
    simon_separability,
    symplectic_eigenvalues,
)

__all__ = [
    "__version__",
    "CoefficientSet",
    "ConfigError",
    "ConvergenceError",
    "CovarianceMatrix",
    "EntanglementEvents",
    "GridConfig",
    "PhysicalConfig",
    "QuadratureResult",
    "SecularAccumulator",
    "SecularSet",
    "SeparabilityTrace",
    "SweepRow",
    "SymplecticEigenvalues",
    "ValidatedConfig",
    "big_gamma",
    "coefficient_set",
    "compute_trace",
    "delta_coeff",
    "detect_events",
    "final_death",
    "gamma_coeff",
    "integrate_adaptive",
    "local_extrema_count",
    "oracle_coefficient",
    "oscillator_frequency",
    "pi_coeff",
    "propagate",
    "refine_root",
    "secular_set",
    "simon_from_dense",
    "simon_separability",
    "spectral_density",
    "sweep",
    "symplectic_eigenvalues",
    "time_grid",
    "twb_covariance",
    "validate",
]
