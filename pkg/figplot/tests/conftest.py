"""Shared fixtures built on the synthetic-trace helpers."""

from __future__ import annotations

import pytest

from figplot_testlib import make_trace_csv


@pytest.fixture
def trace_csv(tmp_path):
    return make_trace_csv(tmp_path / "trace.csv")


@pytest.fixture
def trace_trio(tmp_path):
    return [
        make_trace_csv(
            tmp_path / f"trace{i}.csv", amplitude=1.0 + 0.5 * i, phase=0.3 * i
        )
        for i in range(3)
    ]
