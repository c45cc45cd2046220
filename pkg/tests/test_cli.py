"""Tests for the command-line interface."""

from __future__ import annotations

import pytest

from caputo_lk.cli import main


def test_order_subcommand(capsys):
    code = main(
        [
            "order",
            "--scheme",
            "l2",
            "--alpha",
            "0.5",
            "--m",
            "2",
            "--beta",
            "0.5",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "measured_R=2.00" in out
    assert "theoretical=2.0000" in out


def test_order_lk_requires_k(capsys):
    code = main(
        ["order", "--scheme", "lk", "--alpha", "0.5", "--m", "2", "--beta", "0.5"]
    )
    assert code == 2
    assert "needs --k" in capsys.readouterr().err


def test_order_rejects_bad_alpha(capsys):
    code = main(
        ["order", "--scheme", "l1", "--alpha", "1.5", "--m", "1", "--beta", "0.5"]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_order_degenerate_input(capsys):
    # |t - 0.5| is reproduced exactly by the linear scheme
    code = main(
        ["order", "--scheme", "l1", "--alpha", "0.5", "--m", "0", "--beta", "1.0"]
    )
    assert code == 1
    assert "round-off floor" in capsys.readouterr().err


def test_first_node_subcommand(capsys):
    code = main(["first-node", "--scheme", "l12", "--alpha", "0.7", "--beta", "0.8"])
    out = capsys.readouterr().out
    assert code == 0
    assert "error=1.570" in out
    assert "expected=1.3000" in out


def test_order_table_to_file(tmp_path, capsys):
    dest = tmp_path / "t4.csv"
    code = main(["order-table", "--table", "4", "--format", "csv", "--out", str(dest)])
    assert code == 0
    lines = dest.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("scheme,alpha,")
    assert len(lines) == 28


def test_order_table_markdown_stdout(capsys):
    code = main(["order-table", "--table", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("## interior convergence orders, L1-2 scheme")
    assert "| 0.7 |" in out


def test_order_table_rejects_unknown_id():
    with pytest.raises(SystemExit) as info:
        main(["order-table", "--table", "9"])
    assert info.value.code == 2


def test_verify_subcommand(capsys):
    code = main(["verify"])
    out = capsys.readouterr().out
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_usage_error_without_subcommand():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
