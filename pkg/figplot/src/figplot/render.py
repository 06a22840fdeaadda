"""Figure assembly for separability traces.

render draws every requested trace on one axes with a horizontal
reference line at S = 0, a legend built from the curve labels, and fixed
geometry (figure size and dpi are module constants), so repeated runs on
the same inputs produce images with identical pixel dimensions. The
first three curves default to solid, dashed, and dotted strokes; longer
curve lists cycle through the same sequence. All inputs are read and
validated before the output file is opened, so a contract violation in
any input leaves no image behind.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import matplotlib
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .reader import TraceData, read_trace

FIGSIZE = (6.4, 4.8)
DPI = 150

LINE_STYLES = ("solid", "dashed", "dotted")
STYLE_CHOICES = LINE_STYLES + ("dashdot",)

FORMATS = (".png", ".svg")

# Pinned so SVG element ids do not vary between runs.
HASH_SALT = "figplot"

__all__ = [
    "DPI",
    "FIGSIZE",
    "FORMATS",
    "LINE_STYLES",
    "Curve",
    "FigureSpec",
    "render",
]


@dataclass(frozen=True)
class Curve:
    """One plotted series: where it comes from and how it is drawn."""

    path: str
    label: str
    style: str


@dataclass(frozen=True)
class FigureSpec:
    """Everything render needs: curves, output target, and axis limits."""

    curves: tuple[Curve, ...]
    out: str
    title: Optional[str] = None
    tau_max: Optional[float] = None
    y_range: Optional[tuple[float, float]] = None

    def __post_init__(self) -> None:
        if not self.curves:
            raise ValueError("at least one input curve is required")
        labels = [curve.label for curve in self.curves]
        if len(set(labels)) != len(labels):
            raise ValueError(f"labels must be unique, got {labels}")
        for curve in self.curves:
            if curve.style not in STYLE_CHOICES:
                raise ValueError(
                    f"unknown line style {curve.style!r}, "
                    f"choose from {STYLE_CHOICES}"
                )
        suffix = Path(self.out).suffix.lower()
        if suffix not in FORMATS:
            raise ValueError(
                f"output {self.out!r} must end in one of {FORMATS}"
            )
        if self.tau_max is not None and self.tau_max <= 0.0:
            raise ValueError(f"tau_max must be positive, got {self.tau_max}")
        if self.y_range is not None and self.y_range[0] >= self.y_range[1]:
            raise ValueError(f"empty y range {self.y_range}")

    @classmethod
    def from_cli(
        cls,
        inputs: Sequence[str],
        labels: Sequence[str],
        out: str,
        title: Optional[str] = None,
        tau_max: Optional[float] = None,
    ) -> "FigureSpec":
        """Pair inputs with labels and assign the default style cycle."""
        if len(inputs) != len(labels):
            raise ValueError(
                f"got {len(inputs)} inputs but {len(labels)} labels; "
                "provide one label per input"
            )
        curves = tuple(
            Curve(path=path, label=label, style=LINE_STYLES[i % len(LINE_STYLES)])
            for i, (path, label) in enumerate(zip(inputs, labels))
        )
        return cls(curves=curves, out=out, title=title, tau_max=tau_max)


def _clip(trace: TraceData, tau_max: Optional[float]) -> tuple[list, list]:
    if tau_max is None:
        return list(trace.tau), list(trace.s)
    kept = [(t, v) for t, v in zip(trace.tau, trace.s) if t <= tau_max]
    if not kept:
        raise ValueError(
            f"tau_max={tau_max} excludes every sample of {trace.path}"
        )
    return [t for t, _ in kept], [v for _, v in kept]


def _metadata(suffix: str) -> dict:
    # Strip the volatile fields each backend would otherwise stamp, so
    # output bytes depend only on the inputs and the library version.
    if suffix == ".svg":
        return {"Date": None}
    return {"Software": None}


def _compose(spec: FigureSpec, series: Sequence[tuple[list, list]]) -> Figure:
    """Build the figure object for the clipped series, without writing it."""
    fig = Figure(figsize=FIGSIZE, dpi=DPI)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    ax.axhline(0.0, color="0.45", linewidth=0.8, zorder=1)
    for curve, (tau, values) in zip(spec.curves, series):
        ax.plot(
            tau,
            values,
            linestyle=curve.style,
            linewidth=1.4,
            label=curve.label,
            zorder=2,
        )
    ax.set_xlabel(r"$\tau$")
    ax.set_ylabel(r"$S$")
    if spec.title:
        ax.set_title(spec.title)
    if spec.tau_max is not None:
        ax.set_xlim(0.0, spec.tau_max)
    if spec.y_range is not None:
        ax.set_ylim(*spec.y_range)
    else:
        # The S = 0 reference must stay in view even when every sample
        # sits on one side of it.
        low, high = ax.get_ylim()
        ax.set_ylim(min(low, 0.0), max(high, 0.0))
    ax.legend(frameon=False)
    return fig


def render(spec: FigureSpec) -> Path:
    """Draw the figure described by spec and write it to spec.out.

    Returns the output path. Raises ContractError if any input is
    missing or malformed (nothing is written in that case) and
    ValueError for range problems such as tau_max clipping away a whole
    curve.
    """
    traces = [read_trace(curve.path) for curve in spec.curves]
    series = [_clip(trace, spec.tau_max) for trace in traces]
    fig = _compose(spec, series)

    out = Path(spec.out)
    suffix = out.suffix.lower()
    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT}):
        fig.savefig(
            out,
            format=suffix.lstrip("."),
            metadata=_metadata(suffix),
        )
    return out
