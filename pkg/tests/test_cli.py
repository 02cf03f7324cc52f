#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#


import json
from pathlib import Path

from _pytest.monkeypatch import MonkeyPatch
from click.testing import CliRunner
from provide.testkit.mocking import MagicMock
import pytest

from harmvol.cli import main_cli
from harmvol.commands.logic import SUITE_RUNNERS, SuiteResult
from harmvol.common.serialization import load_msgpack_bytes

pytestmark = pytest.mark.cli


def _invoke(args: list[str]) -> tuple[int, str]:
    runner = CliRunner()
    result = runner.invoke(main_cli, args)
    return result.exit_code, result.output


@pytest.fixture
def fs(tmp_path: Path, monkeypatch: MonkeyPatch) -> Path:
    """Run inside an empty directory so no project hvol.toml is picked up."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_help_lists_commands() -> None:
    """The root group lists every lazy command and the config group."""
    code, output = _invoke(["--help"])
    assert code == 0, output
    for name in ("integral", "snf", "table", "tau1", "verify", "config"):
        assert name in output


def test_table_csv(fs: Path) -> None:
    """n = 6 gives a header and 30 rows."""
    out = fs / "table.csv"
    code, output = _invoke(["table", "--format", "csv", "--out", str(out)])
    assert code == 0, output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 31
    assert lines[0].startswith("block,tensor,condition,i,j,k,printed,predicted")


def test_table_odd_json(fs: Path) -> None:
    out = fs / "table.json"
    code, output = _invoke(["table", "--parity", "odd", "--out", str(out)])
    assert code == 0, output
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["meta"]["n"] == 5
    assert len(data["rows"]) == 20
    assert "1/10" in {row["computed_mod1"] for row in data["rows"]}
    assert sum(1 for row in data["rows"] if row["erratum"]) == 2


@pytest.mark.parametrize("args", [["--genus", "1"], ["--parity", "both"], ["--format", "yaml"], ["--degree", "1"]])
def test_table_rejects_bad_options(fs: Path, args: list[str]) -> None:
    code, output = _invoke(["table", *args])
    assert code == 1
    assert "Error:" in output


@pytest.mark.parametrize(("ijk", "expected"), [(("0", "2", "5"), "5/6"), (("0", "0", "0"), "0/1")])
def test_integral(fs: Path, ijk: tuple[str, str, str], expected: str) -> None:
    out = fs / "integral.json"
    code, output = _invoke(["integral", *ijk, "--out", str(out)])
    assert code == 0, output
    row = json.loads(out.read_text(encoding="utf-8"))["rows"][0]
    assert row["closed_mod1"] == expected
    assert row["agree"] is True


def test_integral_out_of_range(fs: Path) -> None:
    code, _ = _invoke(["integral", "0", "0", "9"])
    assert code == 1


def test_tau1_genus2(fs: Path) -> None:
    out = fs / "tau1.json"
    code, output = _invoke(["tau1", "--out", str(out)])
    assert code == 0, output
    data = json.loads(out.read_text(encoding="utf-8"))
    assert len(data["rows"]) == 64
    assert data["word_defects"] == []
    assert data["s_sets"]["closed_forms_match"] is True
    assert data["s_sets"]["words_match"] is True


def test_snf_msgpack(fs: Path) -> None:
    out = fs / "snf.msgpack"
    code, output = _invoke(["snf", "--format", "msgpack", "--out", str(out)])
    assert code == 0, output
    data = load_msgpack_bytes(out.read_bytes())
    assert data["k_rank"] == 15
    assert data["module_size"] == 60
    assert data["gram"]["rank"] == 4


def test_verify_main_theorem_odd(fs: Path) -> None:
    """Suite entries are deterministic; wall-clock seconds live only under the top-level timings key."""
    out = fs / "report.json"
    code, output = _invoke(["verify", "--suite", "main-theorem", "--parity", "odd", "--out", str(out)])
    assert code == 0, output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["success"] is True
    (suite,) = report["suites"]
    assert suite["suite_name"] == "main-theorem"
    assert suite["details"]["holds"] is True
    assert "duration" not in suite
    assert "timings" not in suite["details"]
    assert set(report["timings"]) == {"main-theorem"}
    assert report["timings"]["main-theorem"] >= 0


def test_verify_skips_s_sets_above_genus_2(fs: Path) -> None:
    out = fs / "report.json"
    code, output = _invoke(["verify", "--suite", "s-sets", "--genus", "3", "--out", str(out)])
    assert code == 0, output
    (suite,) = json.loads(out.read_text(encoding="utf-8"))["suites"]
    assert suite["skipped"] is True


def test_verify_s_sets_odd_gates_on_transcription(fs: Path) -> None:
    """For n = 5 the word-derived sets differ in column 0; only the printed closed forms gate."""
    out = fs / "report.json"
    code, output = _invoke(["verify", "--suite", "s-sets", "--parity", "odd", "--out", str(out)])
    assert code == 0, output
    (suite,) = json.loads(out.read_text(encoding="utf-8"))["suites"]
    assert suite["success"] is True
    assert suite["details"]["gate"] == "closed forms vs printed sets"
    assert suite["details"]["words_match"] is False


def test_verify_unknown_suite(fs: Path) -> None:
    code, output = _invoke(["verify", "--suite", "bogus"])
    assert code == 1
    assert "Unknown suite" in output


def test_verify_failure_exit_code(fs: Path, monkeypatch: MonkeyPatch) -> None:
    """A failing suite gives exit code 2 and a failed report."""
    failed = SuiteResult("table", False, 30, 1, failures=["l0⊗l2⊗l1 [i+1=j-1=k]: computed 1/6, expected 1/3"])
    mock_runner = MagicMock(return_value=failed)
    monkeypatch.setitem(SUITE_RUNNERS, "table", mock_runner)

    out = fs / "report.json"
    code, _ = _invoke(["verify", "--suite", "table", "--out", str(out)])
    assert code == 2
    mock_runner.assert_called_once()
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["success"] is False
    assert report["suites"][0]["failures"] == failed.failures


def test_config_file_defaults_apply(fs: Path) -> None:
    (fs / "hvol.toml").write_text('[defaults]\nparity = "odd"\nformat = "csv"\n')
    out = fs / "table.csv"
    code, output = _invoke(["table", "--out", str(out)])
    assert code == 0, output
    assert len(out.read_text(encoding="utf-8").splitlines()) == 21


def test_config_show(fs: Path) -> None:
    (fs / "hvol.toml").write_text("[defaults]\ngenus = 3\n")
    code, output = _invoke(["config", "show"])
    assert code == 0, output
    assert "defaults" in output
    assert "genus" in output


def test_config_show_empty(fs: Path) -> None:
    code, output = _invoke(["config", "show"])
    assert code == 0, output
    assert "No hvol configuration loaded" in output


def test_bad_config_file(fs: Path) -> None:
    bad = fs / "broken.toml"
    bad.write_text("[defaults\n")
    code, output = _invoke(["--config-file", str(bad), "table"])
    assert code == 1
    assert "Failed to parse" in output


# 🌀🧮🔚
