import filecmp
import os
from fractions import Fraction

import pytest

from pntkit import cli
from pntkit.errors import ConfigError


def test_parse_number():
    assert cli.parse_number("10^12") == 10**12
    assert cli.parse_number("1e6") == 10**6
    assert cli.parse_number("2^22") == 2**22
    assert cli.parse_number("4096") == 4096
    with pytest.raises(ConfigError):
        cli.parse_number("ten")


def test_parse_fraction_and_grids():
    assert cli.parse_fraction("1/50") == Fraction(1, 50)
    assert cli.parse_fraction("0.5") == Fraction(1, 2)
    assert cli.parse_grid("1e2,1e3") == [100, 1000]
    assert cli.parse_fraction_grid("1/20,0.1") == [Fraction(1, 20), Fraction(1, 10)]


def test_config_file_roundtrip(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("seed = 9\nprofile = quick\n# comment\ntrials = 7\n")
    parser = cli.build_parser()
    args = parser.parse_args(["tk", "--config", str(cfg_file)])
    cfg = cli.make_config(args)
    assert cfg.seed == 9 and cfg.profile == "quick"
    assert cfg.options["trials"] == 7
    # flags win over the file
    args = parser.parse_args(["tk", "--config", str(cfg_file), "--seed", "4"])
    assert cli.make_config(args).seed == 4


def test_config_file_diagnostics(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("seed 9\n")
    with pytest.raises(ConfigError, match="bad.cfg:1"):
        cli.read_config_file(str(bad))


def test_tk_suite_reports_deterministic(tmp_path):
    d1, d2 = str(tmp_path / "a"), str(tmp_path / "b")
    assert cli.main(["tk", "--trials", "15", "--seed", "7", "--output-dir", d1]) == 0
    assert cli.main(["tk", "--trials", "15", "--seed", "7", "--output-dir", d2]) == 0
    assert filecmp.cmp(os.path.join(d1, "tk.csv"), os.path.join(d2, "tk.csv"), shallow=False)
    assert filecmp.cmp(
        os.path.join(d1, "summary.json"), os.path.join(d2, "summary.json"), shallow=False
    )


def test_sieve_suite_passes(tmp_path):
    code = cli.main(
        ["sieve", "--profile", "quick", "--output-dir", str(tmp_path), "--seed", "1"]
    )
    assert code == 0
    assert (tmp_path / "sieve.csv").exists()
    assert (tmp_path / "summary.json").exists()


def test_budget_exit_code(tmp_path):
    code = cli.main(["sieve", "--hi", "10^12", "--output-dir", str(tmp_path)])
    assert code == cli.EXIT_BUDGET


def test_config_error_exit_code(tmp_path):
    code = cli.main(["tk", "--config", str(tmp_path / "missing.cfg")])
    assert code == cli.EXIT_CONFIG


def test_json_format(tmp_path):
    code = cli.main(
        ["tk", "--trials", "5", "--format", "json", "--output-dir", str(tmp_path)]
    )
    assert code == 0
    assert (tmp_path / "tk.json").exists()


def test_json_format_deterministic(tmp_path):
    d1, d2 = str(tmp_path / "a"), str(tmp_path / "b")
    for d in (d1, d2):
        cli.main(["build-sets", "--format", "json", "--seed", "2", "--output-dir", d])
    assert filecmp.cmp(
        os.path.join(d1, "build_sets.json"), os.path.join(d2, "build_sets.json"), shallow=False
    )


def test_build_sets_real_budget_stop(tmp_path):
    code = cli.main(
        ["build-sets", "--universe", "real", "--output-dir", str(tmp_path)]
    )
    assert code == cli.EXIT_BUDGET
