"""Configuration types and validation.

Everything downstream works in dimensionless units: frequencies are measured
in units of the bath cutoff (omega_c = 1), time enters as tau = omega_c * t,
and the temperature as temp_ratio = k_B T / (hbar omega_c), with
hbar = k_B = 1. An oscillator is located relative to the cutoff by its
resonance parameter x_i = omega_c / omega_i, so its frequency in internal
units is r_i = 1 / x_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_ALPHA = 0.1
DEFAULT_TEMP_RATIO = 100.0
DEFAULT_TAU_MAX = 10.0
DEFAULT_DTAU = 1e-3
DEFAULT_REFINE_TOL = 1e-8

# The closed-form kernels assume a hot bath; below this temperature ratio the
# high-temperature reduction of the thermal occupancy starts to lose accuracy.
MIN_TRUSTED_TEMP_RATIO = 10.0

# Squeezing band the model is normally exercised in. Outside it everything
# still evaluates, but the short-time approximation is less well explored,
# so validation records a warning instead of failing.
TRUSTED_R_BAND = (0.01, 1.0)

DIAG_MODES = ("equal", "split")


class ConfigError(ValueError):
    """Raised when a configuration value is outside its allowed domain."""


@dataclass(frozen=True)
class PhysicalConfig:
    """Physical inputs of one experiment.

    r is the squeezing parameter of the initial twin-beam state, x1 and x2
    the resonance parameters of the two oscillators, alpha the
    system-reservoir coupling, temp_ratio the bath temperature over the
    cutoff energy.
    """

    r: float = 1.0
    x1: float = 1.0
    x2: float = 1.0
    alpha: float = DEFAULT_ALPHA
    temp_ratio: float = DEFAULT_TEMP_RATIO


@dataclass(frozen=True)
class GridConfig:
    """Time-grid inputs: window end, target step, and root refinement tolerance."""

    tau_max: float = DEFAULT_TAU_MAX
    dtau: float = DEFAULT_DTAU
    refine_tol: float = DEFAULT_REFINE_TOL


@dataclass(frozen=True)
class ValidatedConfig:
    """A PhysicalConfig that passed validation, with derived frequencies.

    r1 and r2 are the oscillator frequencies in cutoff units (1/x1, 1/x2).
    Warnings collected during validation are carried as data; nothing is
    printed here.
    """

    r: float
    x1: float
    x2: float
    alpha: float
    temp_ratio: float
    r1: float
    r2: float
    warnings: tuple[str, ...] = ()


def _require_finite(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return value


def validate(config: PhysicalConfig, grid: GridConfig) -> ValidatedConfig:
    """Check both configs and return the physics part with derived ratios.

    Raises ConfigError naming the offending field for domain violations
    (non-positive x1, x2, temp_ratio, negative alpha or r, malformed grid).
    Out-of-band but well-defined inputs produce warnings on the returned
    object instead of errors. Validation is idempotent: feeding the fields of
    a ValidatedConfig back through produces identical derived values.
    """
    r = _require_finite("r", config.r)
    x1 = _require_finite("x1", config.x1)
    x2 = _require_finite("x2", config.x2)
    alpha = _require_finite("alpha", config.alpha)
    temp_ratio = _require_finite("temp_ratio", config.temp_ratio)

    if x1 <= 0.0:
        raise ConfigError(f"x1 must be positive, got {x1}")
    if x2 <= 0.0:
        raise ConfigError(f"x2 must be positive, got {x2}")
    if alpha < 0.0:
        raise ConfigError(f"alpha must be non-negative, got {alpha}")
    if temp_ratio <= 0.0:
        raise ConfigError(f"temp_ratio must be positive, got {temp_ratio}")
    if r < 0.0:
        raise ConfigError(f"r must be non-negative, got {r}")

    tau_max = _require_finite("tau_max", grid.tau_max)
    dtau = _require_finite("dtau", grid.dtau)
    refine_tol = _require_finite("refine_tol", grid.refine_tol)
    if not 0.0 < dtau < tau_max:
        raise ConfigError(
            f"grid requires 0 < dtau < tau_max, got dtau={dtau}, tau_max={tau_max}"
        )
    if not 0.0 < refine_tol < dtau:
        raise ConfigError(
            f"grid requires 0 < refine_tol < dtau, got refine_tol={refine_tol}, dtau={dtau}"
        )

    warnings: list[str] = []
    lo, hi = TRUSTED_R_BAND
    if not lo <= r <= hi:
        warnings.append(
            f"squeezing r={r:g} is outside the usual band [{lo:g}, {hi:g}]; "
            "results are well defined but less explored there"
        )
    if temp_ratio < MIN_TRUSTED_TEMP_RATIO:
        warnings.append(
            f"temp_ratio={temp_ratio:g} is below {MIN_TRUSTED_TEMP_RATIO:g}; "
            "the hot-bath closed forms lose accuracy at low temperature"
        )

    return ValidatedConfig(
        r=r,
        x1=x1,
        x2=x2,
        alpha=alpha,
        temp_ratio=temp_ratio,
        r1=1.0 / x1,
        r2=1.0 / x2,
        warnings=tuple(warnings),
    )


def oscillator_frequency(config: ValidatedConfig, oscillator: int) -> float:
    """Frequency r_i of oscillator 1 or 2 in cutoff units."""
    if oscillator == 1:
        return config.r1
    if oscillator == 2:
        return config.r2
    raise ConfigError(f"oscillator index must be 1 or 2, got {oscillator}")
