"""
Tests for the command-line entry point: exit codes and exported files.
"""

import json
import os
import sys
import tempfile

import pytest

from main import build_parser, config_from_args, main


def test_parser_maps_flags_to_params():
    """Test flag parsing and the JSON-last format order."""
    args = build_parser().parse_args(["nehari", "--k-max", "10", "--grid", "64", "--format", "markdown",
                                      "--format", "csv", "--out", "r.json"])
    config = config_from_args(args)
    assert config.command == "nehari"
    assert config.params["k_max"] == 10 and config.params["grid"] == 64
    assert config.formats == ["markdown", "csv", "json"]
    assert config.output == "r.json"


def test_unknown_subcommand_exits():
    """Test that argparse rejects unknown subcommands."""
    with pytest.raises(SystemExit):
        build_parser().parse_args(["nope"])


def test_every_template_parameter_has_a_flag():
    """Test that the schur, schatten-embed and embed-verify parameters reach the config."""
    parser = build_parser()
    config = config_from_args(parser.parse_args(["schur", "--pattern", "bennett_tails", "--table-size", "500",
                                                 "--support-bound", "80", "--iterations", "5"]))
    assert config.params["table_size"] == 500 and config.params["support_bound"] == 80
    assert config.params["iterations"] == 5
    config = config_from_args(parser.parse_args(["schatten-embed", "--alpha", "0.25", "--diag-sizes", "5", "10",
                                                 "--symbol-bound", "90"]))
    assert config.params["alpha"] == 0.25 and config.params["diag_sizes"] == [5, 10]
    assert config.params["symbol_bound"] == 90
    config = config_from_args(parser.parse_args(["embed-verify", "--matrix-out", "m0.csv"]))
    assert config.params["matrix_out"] == "m0.csv"
    config = config_from_args(parser.parse_args(["hilbert", "--max-iter", "50"]))
    assert config.params["max_iter"] == 50
    with pytest.raises(ValueError):
        config_from_args(parser.parse_args(["nehari", "--table-size", "10"]))


def test_embed_verify_writes_restricted_matrix():
    """Test --matrix-out next to the JSON report."""
    with tempfile.TemporaryDirectory() as tmpdir:
        out = os.path.join(tmpdir, "embed.json")
        m0 = os.path.join(tmpdir, "m0.csv")
        code = main(["embed-verify", "--n", "2", "--trials", "1", "--matrix-out", m0, "--out", out])
        assert code == 0
        with open(m0, encoding='utf-8') as f:
            assert f.readline().strip() == "i,j,re,im"
        with open(out, encoding='utf-8') as f:
            document = json.load(f)
    assert document["rows"][-1]["m0_csv"] == m0


def test_hilbert_run_writes_report():
    """Test a passing run and its JSON report."""
    with tempfile.TemporaryDirectory() as tmpdir:
        out = os.path.join(tmpdir, "hilbert.json")
        code = main(["hilbert", "--n", "10", "40", "--out", out])
        assert code == 0, f"Exit code {code}"
        with open(out, encoding='utf-8') as f:
            document = json.load(f)
    assert document["command"] == "hilbert"
    assert document["passed"] is True
    assert document["config"]["params"]["n"] == [10, 40]
    assert [r["N"] for r in document["rows"]] == [10, 40]


def test_extra_formats():
    """Test CSV and Markdown exports next to the JSON report."""
    with tempfile.TemporaryDirectory() as tmpdir:
        out = os.path.join(tmpdir, "nehari.json")
        code = main(["nehari", "--k-max", "10", "--grid", "4096", "--out", out,
                     "--format", "csv", "--format", "markdown"])
        assert code == 0
        assert os.path.exists(os.path.join(tmpdir, "nehari.csv"))
        assert os.path.exists(os.path.join(tmpdir, "nehari.md"))
        with open(out, encoding='utf-8') as f:
            document = json.load(f)
    assert set(document["exported_files"]) == {"csv", "markdown"}


def test_invalid_configuration_exits_2():
    """Test exit code 2 for bad parameters and unreadable inputs."""
    with tempfile.TemporaryDirectory() as tmpdir:
        out = os.path.join(tmpdir, "bad.json")
        assert main(["hilbert", "--n", "50", "10", "--out", out]) == 2
        assert main(["hilbert", "--trials", "3", "--out", out]) == 2
        assert main(["embed-verify", "--trials", "0", "--matrix", os.path.join(tmpdir, "missing.csv"), "--out", out]) == 2
        assert not os.path.exists(out), "Nothing is exported on a configuration error"


def run_all_tests():
    """Run all tests."""
    print("=" * 60)
    print("Command line - Test Suite")
    print("=" * 60)
    tests = [
        test_parser_maps_flags_to_params,
        test_unknown_subcommand_exits,
        test_every_template_parameter_has_a_flag,
        test_embed_verify_writes_restricted_matrix,
        test_hilbert_run_writes_report,
        test_extra_formats,
        test_invalid_configuration_exits_2,
    ]
    try:
        for test in tests:
            test()
            print(f"✓ {test.__name__} passed")
        print("✓ ALL TESTS PASSED!")
        return True
    except AssertionError as e:
        print(f"\n✗ TEST FAILED: {e}")
        return False


if __name__ == "__main__":
    sys.exit(0 if run_all_tests() else 1)
