"""Separability traces, event detection, and parameter sweeps.

compute_trace samples the separability function S(tau) on an ascending grid
by propagating the covariance at every point, keeping the per-oscillator
damping integrals and a physicality flag alongside. The secular integrals
feeding the propagation are accumulated incrementally along the grid, so a
10^4-point trace costs a single pass; the same accumulators back a continuous
evaluator stored on the trace, which detect_events uses to refine sign
changes by re-evaluating S inside each bracket instead of interpolating
samples (interpolation is unreliable near grazing minima in the strongly
oscillatory regimes).

detect_events classifies the refined crossings: the first negative-to-
positive crossing of a trace that starts entangled is the sudden-death time
tau_dis; a later positive-to-negative re-entry is a revival. Grid samples
within 1e-13 of zero that do not separate opposite signs are reported as
touch events, not crossings.

sweep repeats trace plus detection along one parameter axis. Rows are
independent and run on a small thread pool sized by the TWINBEAM_THREADS
environment variable (unset or 0 means one worker per row up to the CPU
count); failures are recorded per row and never abort the sweep.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .gaussian import CovarianceMatrix, propagate
from .kernels import big_gamma
from .numerics import refine_root
from .params import (
    ConfigError,
    GridConfig,
    PhysicalConfig,
    ValidatedConfig,
    validate,
)
from .secular import SecularAccumulator
from .separability import simon_separability, symplectic_eigenvalues

THREADS_ENV_VAR = "TWINBEAM_THREADS"

# Grid samples closer to zero than this are treated as lying on the
# separability boundary rather than carrying a sign.
ZERO_LEVEL = 1e-13

SWEEP_AXES = ("x1", "x2", "r")


def time_grid(grid: GridConfig) -> np.ndarray:
    """Ascending sample times: tau = 0 to tau_max in steps of at most dtau."""
    n = max(1, math.ceil(grid.tau_max / grid.dtau - 1e-12))
    return np.linspace(0.0, grid.tau_max, n + 1)


@dataclass(frozen=True, eq=False)
class SeparabilityTrace:
    """S(tau) samples plus the per-sample context they were computed with.

    evaluator, when present, re-computes S at arbitrary tau inside the
    window, consistently with the grid samples; event refinement requires it.
    """

    taus: np.ndarray
    s_values: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    physicality_flags: np.ndarray
    config: ValidatedConfig
    grid: GridConfig
    diag_mode: str = "equal"
    evaluator: Optional[Callable[[float], float]] = field(
        default=None, repr=False, compare=False)

    def __post_init__(self):
        for name in ("taus", "s_values", "gamma1", "gamma2", "physicality_flags"):
            arr = np.asarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.taus.ndim != 1 or self.taus.size == 0:
            raise ValueError("taus must be a non-empty one-dimensional grid")
        if self.taus[0] != 0.0:
            raise ValueError(f"trace must start at tau=0, got {self.taus[0]}")
        if np.any(np.diff(self.taus) <= 0.0):
            raise ValueError("taus must be strictly increasing")
        if self.s_values.shape != self.taus.shape:
            raise ValueError("s_values must align with taus")


def compute_trace(config: ValidatedConfig, grid: GridConfig, *,
                  diag_mode: str = "equal") -> SeparabilityTrace:
    """Sample S(tau), Gamma_i(tau), and physicality over the grid window."""
    taus = time_grid(grid)
    acc1 = SecularAccumulator(taus, config.r1, config.alpha,
                              config.temp_ratio, oscillator=1)
    if config.r2 == config.r1:
        acc2 = acc1
    else:
        acc2 = SecularAccumulator(taus, config.r2, config.alpha,
                                  config.temp_ratio, oscillator=2)

    def provider(tau: float, oscillator: int):
        return (acc1 if oscillator == 1 else acc2).values_at(tau)

    def sigma_at(tau: float) -> CovarianceMatrix:
        return propagate(config, tau, diag_mode=diag_mode,
                         secular_provider=provider)

    def s_at(tau: float) -> float:
        return simon_separability(sigma_at(float(tau)))

    s_values = np.empty(taus.size)
    physical = np.empty(taus.size, dtype=bool)
    for k, tau in enumerate(taus):
        sigma = sigma_at(float(tau))
        s_values[k] = simon_separability(sigma)
        physical[k] = symplectic_eigenvalues(sigma).physical

    return SeparabilityTrace(
        taus=taus,
        s_values=s_values,
        gamma1=big_gamma(taus, config.r1, config.alpha),
        gamma2=big_gamma(taus, config.r2, config.alpha),
        physicality_flags=physical,
        config=config,
        grid=grid,
        diag_mode=diag_mode,
        evaluator=s_at,
    )


@dataclass(frozen=True)
class EntanglementEvents:
    """Refined zero crossings of one trace and their classification.

    tau_dis is the first crossing from negative to positive (None when the
    state never disentangles in the window); n_revivals counts returns into
    the entangled region after the first death; survived means no crossing
    occurred at all. touches are boundary contacts without a sign change.
    """

    tau_dis: Optional[float]
    crossings: tuple[float, ...]
    n_revivals: int
    survived: bool
    touches: tuple[float, ...] = ()


def detect_events(trace: SeparabilityTrace,
                  refine_tol: Optional[float] = None) -> EntanglementEvents:
    """Scan a trace for sign changes and refine each to refine_tol.

    Each detected bracket is refined with bisection on the trace's continuous
    evaluator. A sample inside the zero band (|S| < 1e-13) belongs to the
    crossing around it when its nonzero neighbors disagree in sign, and is
    otherwise reported as a touch event.
    """
    if trace.evaluator is None:
        raise ValueError(
            "trace carries no continuous evaluator; events cannot be refined "
            "from samples alone"
        )
    tol = trace.grid.refine_tol if refine_tol is None else float(refine_tol)
    if tol <= 0.0:
        raise ValueError(f"refine_tol must be positive, got {tol}")

    taus = trace.taus
    s = trace.s_values
    classes = np.zeros(s.size, dtype=int)
    classes[s > ZERO_LEVEL] = 1
    classes[s < -ZERO_LEVEL] = -1

    transitions: list[tuple[float, int, int]] = []
    bracket_spans: list[tuple[int, int]] = []
    last_idx = -1
    last_cls = 0
    for k in range(s.size):
        cls = int(classes[k])
        if cls == 0:
            continue
        if last_cls != 0 and cls != last_cls:
            root = refine_root(trace.evaluator, float(taus[last_idx]),
                               float(taus[k]), tol)
            transitions.append((root, last_cls, cls))
            bracket_spans.append((last_idx, k))
        last_idx, last_cls = k, cls

    touches = []
    for k in np.nonzero(classes == 0)[0]:
        inside_bracket = any(lo < k < hi for lo, hi in bracket_spans)
        if not inside_bracket:
            touches.append(float(taus[k]))

    crossings = tuple(root for root, _, _ in transitions)
    deaths = [root for root, frm, to in transitions if frm < 0 < to]
    tau_dis = deaths[0] if deaths else None
    n_revivals = 0
    if tau_dis is not None:
        n_revivals = sum(1 for root, frm, to in transitions
                         if frm > 0 > to and root > tau_dis)
    return EntanglementEvents(
        tau_dis=tau_dis,
        crossings=crossings,
        n_revivals=n_revivals,
        survived=len(crossings) == 0,
        touches=tuple(touches),
    )


def final_death(events: EntanglementEvents) -> Optional[float]:
    """The last crossing out of the entangled region, if any."""
    if events.tau_dis is None:
        return None
    return events.crossings[-1] if events.crossings else None


def local_extrema_count(trace: SeparabilityTrace, *,
                        negative_only: bool = True,
                        before_tau: Optional[float] = None) -> int:
    """Count strict local extrema of the sampled S(tau).

    With negative_only, only extrema attained at S < 0 count (oscillations of
    the entangled branch); before_tau restricts the window.
    """
    s = trace.s_values
    taus = trace.taus
    left = s[1:-1] - s[:-2]
    right = s[2:] - s[1:-1]
    is_ext = (left * right) < 0.0
    keep = np.ones(is_ext.shape, dtype=bool)
    if negative_only:
        keep &= s[1:-1] < 0.0
    if before_tau is not None:
        keep &= taus[1:-1] < before_tau
    return int(np.count_nonzero(is_ext & keep))


@dataclass(frozen=True)
class SweepRow:
    """Outcome of one sweep point; error holds a message when the row failed."""

    value: float
    tau_dis: Optional[float]
    n_revivals: int
    survived: bool
    error: Optional[str] = None


def _resolve_workers(n_rows: int, max_workers: Optional[int]) -> int:
    if max_workers is None:
        raw = os.environ.get(THREADS_ENV_VAR, "0").strip()
        try:
            max_workers = int(raw) if raw else 0
        except ValueError as exc:
            raise ConfigError(
                f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from exc
    if max_workers < 0:
        raise ConfigError(f"worker count must be >= 0, got {max_workers}")
    if max_workers == 0:
        max_workers = os.cpu_count() or 1
    return max(1, min(max_workers, n_rows))


def sweep(base: ValidatedConfig, axis: str, values: Sequence[float],
          grid: GridConfig, *, diag_mode: str = "equal",
          max_workers: Optional[int] = None) -> list[SweepRow]:
    """Trace and classify events for each value along one parameter axis.

    Rows come back in input order. A failing row records the failure message
    in its error field; the other rows are unaffected.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    values = list(values)
    if not values:
        raise ConfigError("sweep needs at least one value")

    base_physical = PhysicalConfig(r=base.r, x1=base.x1, x2=base.x2,
                                   alpha=base.alpha, temp_ratio=base.temp_ratio)

    def run_row(value: float) -> SweepRow:
        try:
            cfg = validate(replace(base_physical, **{axis: float(value)}), grid)
            trace = compute_trace(cfg, grid, diag_mode=diag_mode)
            events = detect_events(trace)
            return SweepRow(value=float(value), tau_dis=events.tau_dis,
                            n_revivals=events.n_revivals,
                            survived=events.survived)
        except Exception as exc:
            return SweepRow(value=float(value), tau_dis=None, n_revivals=0,
                            survived=False,
                            error=f"{type(exc).__name__}: {exc}")

    workers = _resolve_workers(len(values), max_workers)
    if workers == 1:
        return [run_row(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_row, values))
