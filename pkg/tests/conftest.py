"""Shared fixtures: cached traces for the nine reference operating points.

The regime and event-stability tests all consume the same handful of
expensive traces, so they are computed once per session and memoized by
(r, x1, x2, dtau). The operating points themselves live in
regime_points.py so test modules can import them by a unique module name.
"""

from __future__ import annotations

import pytest

import twinbeam as tb


@pytest.fixture(scope="session")
def trace_cache():
    """Memoized (r, x1, x2, dtau) -> (trace, events) factory."""
    cache: dict = {}

    def get(r: float, x1: float, x2: float, dtau: float = 1e-3):
        key = (r, x1, x2, dtau)
        if key not in cache:
            grid = tb.GridConfig(tau_max=10.0, dtau=dtau, refine_tol=1e-8)
            config = tb.validate(tb.PhysicalConfig(r=r, x1=x1, x2=x2), grid)
            trace = tb.compute_trace(config, grid)
            cache[key] = (trace, tb.detect_events(trace))
        return cache[key]

    return get
