import numpy as np
import pytest

from cventangle.analytic import cat_entanglement
from cventangle.services.purification import finite_width_scan, ordered_map, purification_scan, resolve_jobs
from cventangle.states import cat_amplitudes


def test_resolve_jobs():
    assert resolve_jobs(3) == 3
    assert resolve_jobs(0) == 1
    assert resolve_jobs(None) >= 1


def test_ordered_map_keeps_order():
    cells = [-3, 1, -2, 5, -4]
    assert ordered_map(abs, cells, jobs=1) == [3, 1, 2, 5, 4]
    assert ordered_map(abs, cells, jobs=2) == [3, 1, 2, 5, 4]


def test_purification_scan_rows():
    reports = purification_scan(np.sqrt(0.3), 1.0, 0.0, [0.0, 0.8], [0.0, 0.4], jobs=1)
    assert [(r.outcome.a, r.outcome.b) for r in reports] == [(0.0, 0.0), (0.0, 0.4), (0.8, 0.0), (0.8, 0.4)]
    initial = cat_entanglement(*cat_amplitudes(0.3), 1.0)
    for r in reports:
        assert r.converged
        assert r.error is None
        assert r.e_initial == pytest.approx(initial, abs=1e-5)
        assert r.gain == pytest.approx(r.e_swapped - r.e_initial)
    assert not reports[0].purified
    assert reports[2].purified


def test_purification_scan_is_deterministic_across_workers():
    grid = [-0.4, 0.8]
    serial = purification_scan(np.sqrt(0.3), 1.0, 0.5, grid, grid, jobs=1)
    parallel = purification_scan(np.sqrt(0.3), 1.0, 0.5, grid, grid, jobs=2)
    assert [r.e_swapped for r in serial] == pytest.approx([r.e_swapped for r in parallel], abs=1e-12)


def test_finite_width_scan_never_lowers_p():
    rows = finite_width_scan([0.5, 1.0, 1.8], [0.3, 1.2], [0.0, 0.5, 1.0])
    assert len(rows) == 18
    assert all(r.increased for r in rows)
