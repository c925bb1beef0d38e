import pytest

from cventangle.main import build_parser, main
from cventangle.settings import settings
from cventangle.sweep_io import SCAN_HEADER, SWEEP_HEADER


def test_entangle_bell(capsys):
    assert main(["entangle", "bell", "--alpha", "1", "--beta", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("family=bell E=0.798")
    assert "converged=true" in out


def test_entangle_bell_with_target_offset(capsys):
    assert main(["entangle", "bell", "--alpha", "1", "--beta", "0.2", "--x2", "4"]) == 0
    shifted = float(capsys.readouterr().out.split()[1].removeprefix("E="))
    assert main(["entangle", "bell", "--alpha", "1", "--beta", "0.2"]) == 0
    plain = float(capsys.readouterr().out.split()[1].removeprefix("E="))
    assert shifted == pytest.approx(plain, abs=1e-8)


def test_program_name_comes_from_settings():
    assert build_parser().prog == settings.app_name


def test_entangle_cat(capsys):
    assert main(["entangle", "cat", "--a0-sq", "0.5", "--d", "1"]) == 0
    assert "E=0.948" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["entangle", "nope"],
        ["entangle", "bell", "--r", "0.5"],
        ["entangle", "squeezed", "--r", "-1"],
        ["entangle", "cat", "--a0-sq", "1.5"],
        ["sweep", "--family", "bell"],
        ["sweep", "--family", "bell", "--axis1", "alpha:0:1"],
        ["sweep", "--family", "bell", "--axis1", "r:0:1:3"],
        ["swap", "bell", "--scan"],
        ["verify", "--only", "nope"],
    ],
)
def test_bad_invocations_exit_one(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_sweep_to_stdout(capsys):
    assert main(["sweep", "--family", "squeezed", "--axis1", "r:0.2:0.6:3", "--jobs", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(SWEEP_HEADER)
    assert len(lines) == 4


def test_sweep_output_is_reproducible(tmp_path):
    argv = ["sweep", "--family", "bell", "--axis1", "alpha:0.5:1.5:3", "--fixed", "beta=0.8", "--jobs", "2"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_sweep_from_config(tmp_path, capsys):
    config = tmp_path / "sweep.env"
    config.write_text("family=squeezed\naxis1=r\naxis1_min=0.1\naxis1_max=0.3\naxis1_steps=2\n", encoding="utf-8")
    assert main(["sweep", "--config", str(config), "--jobs", "1"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3


def test_sweep_reports_unconverged_cells(capsys):
    assert main(["sweep", "--family", "squeezed", "--axis1", "r:-0.5:0.5:3", "--jobs", "1"]) == 2
    row = capsys.readouterr().out.splitlines()[1]
    assert row.split(",")[2:4] == ["", "false"]


def test_swap_bell(capsys):
    assert main(["swap", "bell", "--alpha", "1", "--beta", "1", "--c", "0.3"]) == 0
    out = capsys.readouterr().out
    assert "P=16 " in out
    assert "E_swapped=" in out


def test_swap_cat_single_outcome(capsys):
    assert main(["swap", "cat", "--a0-sq", "0.3", "--d", "1", "--a", "0.8"]) == 0
    assert "purified=true" in capsys.readouterr().out


def test_swap_cat_scan(tmp_path):
    out = tmp_path / "scan.csv"
    argv = ["swap", "cat", "--scan", "--a-range=-0.4:0.8:2", "--b-range=0:0:1", "--jobs", "1", "--out", str(out)]
    assert main(argv) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(SCAN_HEADER)
    assert [line.split(",")[:2] for line in lines[1:]] == [["-0.4", "0"], ["0.8", "0"]]


def test_verify_subset(capsys):
    assert main(["verify", "--only", "gates", "trace"]) == 0
    out = capsys.readouterr().out
    assert "2/2 checks passed" in out


def test_verify_fails_on_wrong_trace(monkeypatch, capsys):
    monkeypatch.setattr("cventangle.reduction.trace_analytic_bell", lambda alpha, beta: 1.0 / (alpha * beta))
    assert main(["verify", "--only", "trace"]) == 3
    out = capsys.readouterr().out
    assert "FAIL" in out
