"""Reading and validating separability trace CSVs.

The file format is the entire interface to the simulator: a trace file
must begin with the exact header ``tau,S,Gamma1,Gamma2,physical`` and
carry comma-separated numeric rows below it. Anything else, including a
missing file, is rejected with a ContractError that names the offending
file, and rejection happens before any figure is assembled so a bad
input never produces a partial image.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

TRACE_HEADER = "tau,S,Gamma1,Gamma2,physical"

FIELD_COUNT = 5

__all__ = ["TRACE_HEADER", "ContractError", "TraceData", "read_trace"]


class ContractError(Exception):
    """A trace file is missing or does not honor the CSV contract."""


@dataclass(frozen=True)
class TraceData:
    """One parsed trace: the sample times and separability values."""

    path: str
    tau: tuple[float, ...]
    s: tuple[float, ...]


def read_trace(path: str | Path) -> TraceData:
    """Parse one trace CSV, enforcing the exact header.

    Raises ContractError, with the file name in the message, when the
    file cannot be read, the header deviates from TRACE_HEADER in any
    way, a row has the wrong field count, a value does not parse as a
    number, or no data rows follow the header.
    """
    target = Path(path)
    try:
        text = target.read_text(encoding="utf-8")
    except OSError as exc:
        raise ContractError(f"{target}: cannot read trace file ({exc})") from exc
    lines = text.splitlines()
    if not lines or lines[0] != TRACE_HEADER:
        got = lines[0] if lines else "<empty file>"
        raise ContractError(
            f"{target}: bad trace header {got!r}, expected {TRACE_HEADER!r}"
        )
    taus: list[float] = []
    values: list[float] = []
    for number, row in enumerate(csv.reader(lines[1:]), start=2):
        if len(row) != FIELD_COUNT:
            raise ContractError(
                f"{target}: line {number}: expected {FIELD_COUNT} fields, "
                f"got {len(row)}"
            )
        try:
            taus.append(float(row[0]))
            values.append(float(row[1]))
            for cell in row[2:]:
                float(cell)
        except ValueError as exc:
            raise ContractError(f"{target}: line {number}: {exc}") from exc
    if not taus:
        raise ContractError(f"{target}: no data rows below the header")
    return TraceData(path=str(target), tau=tuple(taus), s=tuple(values))
