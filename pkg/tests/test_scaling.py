"""Scaling fits and phase scans."""

import numpy as np
import pytest

from lrkq.errors import ValidationError
from lrkq.model import ModelParams, QuenchProtocol
from lrkq.scaling import (
    ScalingFit,
    chord_length,
    fit_log_scaling,
    ground_c_eff,
    ground_entropies,
    phase_scan,
    stationary_c_eff,
)


def _synthetic(slope, intercept, Ls=(8, 16, 32, 64, 128)):
    return [(L, slope * np.log(L) + intercept) for L in Ls]


class TestFitLogScaling:
    def test_synthetic_exact(self):
        fit = fit_log_scaling(_synthetic(1.0 / 3.0, 0.2), divisor=3)
        assert fit.c_eff == pytest.approx(1.0, abs=1e-12)
        assert fit.intercept == pytest.approx(0.2, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert not fit.low_confidence

    def test_divisor_bookkeeping_ratio(self):
        pts = _synthetic(0.25, 0.1)
        c3 = fit_log_scaling(pts, divisor=3).c_eff
        c4 = fit_log_scaling(pts, divisor=4).c_eff
        assert c4 / c3 == pytest.approx(4.0 / 3.0, abs=1e-12)

    def test_c_eff_is_slope_times_divisor(self):
        fit = fit_log_scaling(_synthetic(0.11, -0.4), divisor=4)
        assert fit.c_eff == pytest.approx(fit.slope * 4, abs=0.0)

    def test_rejects_few_points(self):
        with pytest.raises(ValidationError):
            fit_log_scaling(_synthetic(0.3, 0.0, Ls=(8, 16, 32)), divisor=3)

    def test_rejects_nonincreasing(self):
        with pytest.raises(ValidationError):
            fit_log_scaling([(8, 1.0), (8, 1.1), (16, 1.2), (32, 1.3)], divisor=3)

    def test_rejects_bad_divisor_and_abscissa(self):
        with pytest.raises(ValidationError):
            fit_log_scaling(_synthetic(0.3, 0.0), divisor=5)
        with pytest.raises(ValidationError):
            fit_log_scaling(_synthetic(0.3, 0.0), divisor=3, abscissa="parabola")
        with pytest.raises(ValidationError):
            fit_log_scaling(_synthetic(0.3, 0.0), divisor=3, abscissa="chord")

    def test_low_confidence_flag(self):
        rng = np.random.default_rng(1)
        pts = [(L, float(rng.uniform(0, 1))) for L in (8, 16, 32, 64, 128)]
        fit = fit_log_scaling(pts, divisor=3)
        assert fit.low_confidence

    def test_chord_synthetic(self):
        N = 512
        pts = [(L, (0.5 / 3) * np.log(chord_length(L, N)) + 1.0)
               for L in (8, 16, 32, 64)]
        fit = fit_log_scaling(pts, divisor=3, abscissa="chord", N=N)
        assert fit.c_eff == pytest.approx(0.5, abs=1e-12)


class TestGroundFits:
    def test_entropies_increase_at_criticality(self):
        pts = ground_entropies(ModelParams(256, 1.0, 1.0, 30.0), (8, 16, 32, 64))
        vals = [s for _, s in pts]
        assert vals == sorted(vals)

    def test_ising_central_charge(self):
        fit = ground_c_eff(ModelParams(512, 1.0, 1.0, 30.0))
        assert fit.c_eff == pytest.approx(0.5, abs=0.05)
        assert not fit.low_confidence

    def test_block_must_fit_in_chain(self):
        with pytest.raises(ValidationError):
            ground_entropies(ModelParams(32, 1.0, 1.0, 2.0), (8, 16, 32, 64))


class TestStationaryFit:
    def test_measure_validation(self):
        q = QuenchProtocol(
            ModelParams(256, 1.0, -1.0, 2.0), ModelParams(256, 1.0, 1.0, 2.0)
        )
        with pytest.raises(ValidationError):
            stationary_c_eff(q, "entropy")

    def test_block_budget_validation(self):
        q = QuenchProtocol(
            ModelParams(64, 1.0, -1.0, 2.0), ModelParams(64, 1.0, 1.0, 2.0)
        )
        with pytest.raises(ValidationError):
            stationary_c_eff(q, "tmi", L_range=(8, 12, 16, 24))

    def test_critical_quench_mi_fit(self):
        q = QuenchProtocol(
            ModelParams(2000, 1.0, -1.0, 2.0), ModelParams(2000, 1.0, 1.0, 2.0)
        )
        fit = stationary_c_eff(q, "mi")
        assert fit.divisor == 3
        assert fit.c_eff == pytest.approx(0.5, abs=0.15)


class TestPhaseScan:
    def test_grid_complete_and_ordered(self):
        initial = ModelParams(240, 1.0, -1.0, 2.0)
        grid = phase_scan(2.0, initial, [0.5, 1.0], [-1.0, 1.0], "mi",
                          L_range=(8, 12, 16, 24), workers=1)
        assert len(grid.cells) == 4
        coords = [(c.mu_f, c.delta_f) for c in grid.cells]
        assert coords == [(0.5, -1.0), (0.5, 1.0), (1.0, -1.0), (1.0, 1.0)]
        assert all(c.fit is not None for c in grid.cells)
        assert grid.cell(1, 0).mu_f == 1.0

    def test_deterministic_across_runs_and_workers(self):
        initial = ModelParams(240, 1.0, -1.0, 1.0)
        kw = dict(mu_values=[0.5, 1.0], delta_values=[-1.0, 1.0],
                  measure="mi", L_range=(8, 12, 16, 24))
        a = phase_scan(1.0, initial, workers=1, **kw)
        b = phase_scan(1.0, initial, workers=2, **kw)
        for ca, cb in zip(a.cells, b.cells):
            assert ca == cb

    def test_per_cell_errors_recorded(self):
        # L range too large for N: every cell fails but the scan completes
        initial = ModelParams(32, 1.0, -1.0, 2.0)
        grid = phase_scan(2.0, initial, [1.0], [1.0, -1.0], "mi",
                          L_range=(8, 12, 16, 24), workers=1)
        assert len(grid.cells) == 2
        assert all(c.fit is None for c in grid.cells)
        assert all("ValidationError" in c.error for c in grid.cells)

    def test_empty_grid_rejected(self):
        initial = ModelParams(64, 1.0, -1.0, 2.0)
        with pytest.raises(ValidationError):
            phase_scan(2.0, initial, [], [1.0], "mi")
