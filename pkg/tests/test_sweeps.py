import pytest
from pydantic import ValidationError

from cventangle.analytic import squeezed_entanglement
from cventangle.errors import DomainError
from cventangle.schemas import SweepAxis, SweepSpec
from cventangle.services.evaluation import build_state, evaluate_family, family_params
from cventangle.services.sweeps import run_sweep
from cventangle.sweep_io import SWEEP_HEADER, csv_text, fmt, read_sweep_config, write_csv


@pytest.fixture
def squeezed_spec() -> SweepSpec:
    return SweepSpec(family="squeezed", axis1=SweepAxis(name="r", min=0.2, max=1.0, steps=3))


def test_family_params():
    assert family_params("cat", {"d": 2})["d"] == 2.0
    assert family_params("cat")["a0_sq"] == 0.5
    with pytest.raises(DomainError):
        family_params("cat", {"alpha": 1.0})
    with pytest.raises(DomainError):
        family_params("nope")


def test_swap_bell_family_switches_on_width():
    sharp = build_state("swap-bell", {"mu": 0.0})
    blurred = build_state("swap-bell", {"mu": 0.5})
    assert blurred != sharp


def test_evaluate_family():
    result = evaluate_family("squeezed", {"r": 0.5})
    assert result.entropy_bits == pytest.approx(squeezed_entanglement(0.5), abs=1e-5)


def test_run_sweep_one_axis(squeezed_spec):
    rows = run_sweep(squeezed_spec, jobs=1)
    assert [r.axis1 for r in rows] == pytest.approx([0.2, 0.6, 1.0])
    for row in rows:
        assert row.axis2 is None
        assert row.converged
        assert row.entropy_bits == pytest.approx(squeezed_entanglement(row.axis1), abs=1e-5)


def test_run_sweep_two_axes_row_major():
    spec = SweepSpec(
        family="bell",
        axis1=SweepAxis(name="alpha", min=0.5, max=1.0, steps=2),
        axis2=SweepAxis(name="beta", min=1.0, max=2.0, steps=2),
        fixed={"sigma": 2.0},
    )
    rows = run_sweep(spec, jobs=1)
    assert [(r.axis1, r.axis2) for r in rows] == [(0.5, 1.0), (0.5, 2.0), (1.0, 1.0), (1.0, 2.0)]
    # E depends on alpha * beta only
    assert rows[1].entropy_bits == pytest.approx(rows[2].entropy_bits, abs=1e-5)


def test_failed_cells_are_reported_not_raised():
    spec = SweepSpec(family="squeezed", axis1=SweepAxis(name="r", min=-0.5, max=0.5, steps=3))
    rows = run_sweep(spec, jobs=1)
    assert rows[0].entropy_bits is None
    assert not rows[0].converged
    assert rows[2].converged


def test_sweep_spec_validation():
    with pytest.raises(ValidationError):
        SweepSpec(family="bell", axis1=SweepAxis(name="r", min=0.0, max=1.0))
    with pytest.raises(ValidationError):
        SweepSpec(
            family="bell",
            axis1=SweepAxis(name="alpha", min=0.5, max=1.0),
            axis2=SweepAxis(name="alpha", min=0.5, max=1.0),
        )
    with pytest.raises(ValidationError):
        SweepAxis(name="r", min=1.0, max=0.0)


def test_csv_is_deterministic(squeezed_spec):
    first = csv_text(run_sweep(squeezed_spec, jobs=1))
    second = csv_text(run_sweep(squeezed_spec, jobs=2))
    assert first == second
    lines = first.splitlines()
    assert lines[0] == ",".join(SWEEP_HEADER)
    assert len(lines) == 4
    assert lines[1].startswith("0.2,,")
    assert lines[1].split(",")[3] == "true"


def test_fmt():
    assert fmt(None) == ""
    assert fmt(True) == "true"
    assert fmt(0.1) == "0.1"
    assert fmt(1.0 / 3.0) == "0.3333333333"


def test_write_csv_to_path(tmp_path, squeezed_spec):
    out = tmp_path / "sweep.csv"
    rows = run_sweep(squeezed_spec, jobs=1)
    write_csv(rows, out)
    assert out.read_text(encoding="utf-8") == csv_text(rows)


def test_read_sweep_config(tmp_path):
    path = tmp_path / "cat.env"
    path.write_text(
        "family=cat\naxis1=d\naxis1_min=0.5\naxis1_max=1.5\naxis1_steps=3\n"
        "axis2=a0_sq\naxis2_min=0.1\naxis2_max=0.9\naxis2_steps=5\nfixed_phase=0.25\ntolerance_sigfigs=6\n",
        encoding="utf-8",
    )
    spec = read_sweep_config(path)
    assert spec.family == "cat"
    assert spec.axis1 == SweepAxis(name="d", min=0.5, max=1.5, steps=3)
    assert spec.axis2.steps == 5
    assert spec.fixed == {"phase": 0.25}
    assert spec.tolerance_sigfigs == 6


@pytest.mark.parametrize(
    "text",
    ["family=cat\n", "family=cat\naxis1=d\naxis1_min=0\naxis1_max=1\ncolour=red\n", "family=cat\naxis1=d\naxis1_min=x\n"],
)
def test_read_sweep_config_errors(tmp_path, text):
    path = tmp_path / "bad.env"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DomainError):
        read_sweep_config(path)


def test_read_sweep_config_missing_file(tmp_path):
    with pytest.raises(DomainError):
        read_sweep_config(tmp_path / "absent.env")
