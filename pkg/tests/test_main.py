"""Tests for main module."""

import json
from pathlib import Path

import pytest
from pytest_mock import MockerFixture

from quadrangle_lie.geometry.quadrangle import Line
from quadrangle_lie.geometry.weyl import GroupCatalog, order3_in_normalizer
from quadrangle_lie.liealg.operators import default_operator_table
from quadrangle_lie.liealg.subalgebra import fold_roots
from quadrangle_lie.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def output_dir(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Path:
    """Send default exports to a temporary directory."""
    out = tmp_path / "out"
    monkeypatch.setenv("QUADRANGLE_LIE_OUTPUT_DIR", str(out))
    return out


# Tests for catalog, weyl and phi


def test_should_print_catalog_counts(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that catalog prints all counts."""
    assert main(["catalog"]) == EXIT_OK
    assert "points=27 lines=45 exterior=36 rootbases=72 weyl=51840" in capsys.readouterr().out


@pytest.mark.parametrize(("dump", "rows"), [("points", 28), ("lines", 46), ("phi", 73)])
def test_should_dump_catalog_tables(capsys: pytest.CaptureFixture[str], dump: str, rows: int) -> None:
    """Test CSV dumps to stdout."""
    assert main(["catalog", "--dump", dump]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == rows


def test_should_write_dump_to_file(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    """Test --out for dumps."""
    target = tmp_path / "tables" / "points.csv"
    assert main(["catalog", "--dump", "points", "--out", str(target)]) == EXIT_OK
    assert target.read_text(encoding="utf-8").startswith("id,code,a,b,c")
    assert f"wrote {target}" in capsys.readouterr().out


def test_should_print_normalizer_facts(capsys: pytest.CaptureFixture[str]) -> None:
    """Test the weyl command."""
    assert main(["weyl", "--line", "0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "order=51840" in out
    assert "reflection_pair_orders 1=36 2=540 3=720" in out
    assert "normalizer=1152 line=0" in out
    assert "order3=80" in out
    assert "fold_pattern 0,8=48 6,6=32" in out


def test_should_print_weyl_order_only(capsys: pytest.CaptureFixture[str]) -> None:
    """Test weyl --order."""
    assert main(["weyl", "--order"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["order=51840"]


@pytest.mark.parametrize("line_id", [0, 7, 44])
def test_should_print_line_normalizer(capsys: pytest.CaptureFixture[str], line_id: int) -> None:
    """Test weyl --normalizer on lines in the single W-orbit."""
    assert main(["weyl", "--normalizer", str(line_id)]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [f"normalizer=1152 line={line_id}", "order3=80"]


def test_should_reject_order_with_normalizer() -> None:
    """Test that --order and --normalizer exclude each other."""
    assert main(["weyl", "--order", "--normalizer", "0"]) == EXIT_USAGE


def test_should_print_phi_counts(capsys: pytest.CaptureFixture[str]) -> None:
    """Test the phi command."""
    assert main(["phi"]) == EXIT_OK
    assert "rootbases=72 exterior=36" in capsys.readouterr().out


# Tests for verify


def test_should_list_suites(capsys: pytest.CaptureFixture[str]) -> None:
    """Test verify --list."""
    assert main(["verify", "--list"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "brackets:" in out
    assert "regression:" in out


def test_should_verify_selected_suites(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    """Test verify with two suites and an explicit report path."""
    report = tmp_path / "report.json"
    code = main(["verify", "--suite", "pairs", "--suite", "brackets", "--out", str(report)])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS pairs" in out
    assert "PASS brackets" in out
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["passed"] is True
    assert [suite["name"] for suite in data["suites"]] == ["pairs", "brackets"]


def test_should_resolve_suite_aliases(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    """Test that prop26 runs the pairs suite once, even when also named directly."""
    report = tmp_path / "report.json"
    code = main(["verify", "--suite", "prop26", "--suite", "pairs", "--out", str(report)])
    assert code == EXIT_OK
    assert "PASS pairs" in capsys.readouterr().out
    data = json.loads(report.read_text(encoding="utf-8"))
    assert [suite["name"] for suite in data["suites"]] == ["pairs"]


def test_should_list_suite_aliases(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that verify --list shows the aliases."""
    assert main(["verify", "--list"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "prop26: alias of pairs" in out
    assert "prop45: alias of g2cases" in out


def test_should_write_report_to_output_dir(output_dir: Path) -> None:
    """Test the default report location."""
    assert main(["verify", "--suite", "catalog"]) == EXIT_OK
    assert (output_dir / "verify-report.json").exists()


def test_should_fail_verification_for_corrupted_root(
    mocker: MockerFixture, capsys: pytest.CaptureFixture[str], tmp_path: Path
) -> None:
    """Test that a single flipped entry makes verify exit 1 and names the root."""
    corrupted = default_operator_table().with_flipped_entry(0, 0, 0)
    mocker.patch("quadrangle_lie.main.default_operator_table", return_value=corrupted)

    code = main(["verify", "--suite", "brackets", "--out", str(tmp_path / "report.json")])

    assert code == EXIT_FAILURE
    out = capsys.readouterr().out
    assert "FAIL brackets" in out
    assert "R_0" in out


@pytest.mark.slow
def test_should_pass_every_suite(tmp_path: Path) -> None:
    """Test a full verification run."""
    assert main(["verify", "--out", str(tmp_path / "report.json")]) == EXIT_OK


@pytest.mark.slow
def test_should_freeze_regression_values(tmp_path: Path) -> None:
    """Test verify --freeze writes every value."""
    path = tmp_path / "regression.json"
    assert main(["verify", "--freeze", "--out", str(path)]) == EXIT_OK
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["order3_in_normalizer"] == 80
    assert data["g2_table_sha256"] is not None


# Tests for build


def test_should_build_g2_table(capsys: pytest.CaptureFixture[str], output_dir: Path) -> None:
    """Test build g2 with default options."""
    assert main(["build", "g2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "dim=14" in out
    data = json.loads((output_dir / "g2-line0.json").read_text(encoding="utf-8"))
    assert data["algebra"]["dimension"] == 14
    assert data["field"] == "GF(2^1)"


def test_should_export_identical_bytes_twice(tmp_path: Path) -> None:
    """Test that two runs write byte-identical tables."""
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["build", "g2", "--out", str(first)]) == EXIT_OK
    assert main(["build", "g2", "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_should_build_d4_as_csv(capsys: pytest.CaptureFixture[str], output_dir: Path) -> None:
    """Test build d4 on another line in CSV."""
    assert main(["build", "d4", "--line", "7", "--format", "csv"]) == EXIT_OK
    assert "dim=28" in capsys.readouterr().out
    assert (output_dir / "d4-line7.csv").read_text(encoding="utf-8").startswith("i,j,k,coeff")


def test_should_build_e6(capsys: pytest.CaptureFixture[str], output_dir: Path) -> None:
    """Test build e6."""
    assert main(["build", "e6"]) == EXIT_OK
    assert "dim=78" in capsys.readouterr().out
    assert (output_dir / "e6.json").exists()


def test_should_build_over_extension_field(tmp_path: Path) -> None:
    """Test build g2 over GF(4)."""
    out = tmp_path / "g2.json"
    assert main(["build", "g2", "--field", "2^2", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["field"] == "GF(2^2)"


# Tests for errors and exit codes


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["bogus"],
        ["build", "f4"],
        ["build", "g2", "--line", "45"],
        ["build", "g2", "--line", "x"],
        ["build", "g2", "--d", "-1"],
        ["build", "g2", "--field", "3"],
        ["verify", "--suite", "nope"],
    ],
)
def test_should_exit_2_on_usage_errors(args: list[str]) -> None:
    """Test argument errors."""
    assert main(args) == EXIT_USAGE


def test_should_exit_0_for_help() -> None:
    """Test --help."""
    assert main(["--help"]) == EXIT_OK


def test_should_exit_2_when_d_index_out_of_range(capsys: pytest.CaptureFixture[str]) -> None:
    """Test --d beyond the order-3 elements."""
    assert main(["build", "g2", "--d", "80"]) == EXIT_USAGE
    assert "out of range" in capsys.readouterr().err


def test_should_exit_2_for_d_with_wrong_fold(group: GroupCatalog, line0: Line) -> None:
    """Test --d naming an element that fixes no root base."""
    elements = order3_in_normalizer(group, line0)
    index = next(i for i, d in enumerate(elements) if fold_roots(line0, d).counts != (6, 6))
    assert main(["build", "g2", "--d", str(index)]) == EXIT_USAGE


def test_should_exit_1_when_closure_fails(mocker: MockerFixture, capsys: pytest.CaptureFixture[str]) -> None:
    """Test build with a corrupted root."""
    corrupted = default_operator_table().with_flipped_entry(0, 0, 0)
    mocker.patch("quadrangle_lie.main.default_operator_table", return_value=corrupted)
    assert main(["build", "e6"]) == EXIT_FAILURE
    assert "Error:" in capsys.readouterr().err


def test_should_exit_2_on_write_error(mocker: MockerFixture, tmp_path: Path) -> None:
    """Test that I/O errors map to exit 2."""
    mocker.patch("quadrangle_lie.liealg.tables.Path.write_text", side_effect=OSError("disk full"))
    assert main(["build", "g2", "--out", str(tmp_path / "g2.json")]) == EXIT_USAGE
