"""Render separability trace CSVs into multi-curve figures.

This tool is a companion to the twinbeam simulator but is deliberately
decoupled from it: the only interface is the trace CSV contract, a
header line ``tau,S,Gamma1,Gamma2,physical`` followed by numeric rows.
Any file honoring that contract can be plotted, and any file violating
it is rejected with a nonzero exit before an image is written.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .reader import TRACE_HEADER, ContractError, TraceData, read_trace
from .render import (
    DPI,
    FIGSIZE,
    FORMATS,
    LINE_STYLES,
    Curve,
    FigureSpec,
    render,
)

__all__ = [
    "__version__",
    "TRACE_HEADER",
    "ContractError",
    "TraceData",
    "read_trace",
    "DPI",
    "FIGSIZE",
    "FORMATS",
    "LINE_STYLES",
    "Curve",
    "FigureSpec",
    "render",
]
