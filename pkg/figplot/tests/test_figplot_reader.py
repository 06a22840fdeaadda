"""Contract enforcement in the CSV reader."""

from __future__ import annotations

import pytest

from figplot.reader import TRACE_HEADER, ContractError, read_trace

from figplot_testlib import make_trace_csv


def test_reads_well_formed_trace(trace_csv):
    trace = read_trace(trace_csv)
    assert trace.path == str(trace_csv)
    assert len(trace.tau) == len(trace.s) == 201
    assert trace.tau[0] == 0.0
    assert trace.tau[-1] == 10.0
    assert trace.tau == tuple(sorted(trace.tau))


def test_missing_file_names_the_path(tmp_path):
    ghost = tmp_path / "nope.csv"
    with pytest.raises(ContractError, match="nope.csv"):
        read_trace(ghost)


@pytest.mark.parametrize(
    "header",
    [
        "tau,S,Gamma1,Gamma2",
        "tau,s,Gamma1,Gamma2,physical",
        " tau,S,Gamma1,Gamma2,physical",
        "tau;S;Gamma1;Gamma2;physical",
        "axis_value,tau_dis,n_revivals,survived",
        "",
    ],
)
def test_wrong_header_rejected(tmp_path, header):
    bad = tmp_path / "bad.csv"
    bad.write_text(header + "\n0,0,0,0,1\n", encoding="utf-8")
    with pytest.raises(ContractError, match="bad.csv"):
        read_trace(bad)


def test_empty_file_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(ContractError, match="header"):
        read_trace(empty)


def test_header_only_rejected(tmp_path):
    bare = tmp_path / "bare.csv"
    bare.write_text(TRACE_HEADER + "\n", encoding="utf-8")
    with pytest.raises(ContractError, match="no data rows"):
        read_trace(bare)


def test_short_row_rejected(tmp_path):
    bad = tmp_path / "short.csv"
    bad.write_text(TRACE_HEADER + "\n0,0,0,0,1\n1,-0.5,0.1\n", encoding="utf-8")
    with pytest.raises(ContractError, match="line 3"):
        read_trace(bad)


def test_non_numeric_cell_rejected(tmp_path):
    bad = tmp_path / "text.csv"
    bad.write_text(TRACE_HEADER + "\n0,zero,0,0,1\n", encoding="utf-8")
    with pytest.raises(ContractError, match="line 2"):
        read_trace(bad)


def test_values_parsed_exactly(tmp_path):
    exact = tmp_path / "exact.csv"
    exact.write_text(
        TRACE_HEADER + "\n0,-3.288529104502061,0,0,1\n0.5,-2.5,0.01,0.02,1\n",
        encoding="utf-8",
    )
    trace = read_trace(exact)
    assert trace.tau == (0.0, 0.5)
    assert trace.s == (-3.288529104502061, -2.5)


def test_fixture_round_trip(tmp_path):
    path = make_trace_csv(tmp_path / "round.csv", amplitude=2.0)
    trace = read_trace(path)
    assert trace.s[0] == -2.0
