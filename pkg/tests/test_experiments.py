import numpy as np
import pytest

from netinfer import (ExperimentConfig, fnr_csv, overall_stats,
                      run_exhaustive_smalln, run_fnr_grid)
from netinfer.experiments import all_labellings

TINY = ExperimentConfig(n_values=(6, 8), m_values=(5,), models=("er", "ws"),
                        p_values=(0.25, 0.75), networks_per_cell=4,
                        samples_per_cell=4, master_seed=303, workers=1)


class TestConfig:
    def test_defaults_match_study_shape(self):
        cfg = ExperimentConfig()
        assert cfg.n_values == (10, 20, 30, 40, 50)
        assert cfg.networks_per_cell == 40
        assert cfg.samples_per_cell == 50
        assert cfg.p_values == (0.1, 0.25, 0.5, 0.75, 0.9)
        assert cfg.networks_per_model == 10

    def test_round_trip(self):
        assert ExperimentConfig.from_dict(TINY.to_dict()) == TINY

    def test_rejects_uneven_network_split(self):
        with pytest.raises(ValueError):
            ExperimentConfig(models=("er", "ws", "rg"), networks_per_cell=10)


class TestFnrGrid:
    def test_schema_and_counts(self):
        cells = run_fnr_grid(TINY)
        assert len(cells) == 2 * 1 * 2 * 2  # n x m x model x p
        for c in cells:
            assert c.trials == 2 * c.n * TINY.samples_per_cell
            assert 0 <= c.failures <= c.trials
        text = fnr_csv(cells)
        lines = text.strip().split("\n")
        assert lines[0] == "n,m,model,p,trials,failures,fnr"
        assert len(lines) == len(cells) + 1

    def test_byte_identical_rerun(self):
        assert fnr_csv(run_fnr_grid(TINY)) == fnr_csv(run_fnr_grid(TINY))

    def test_worker_count_does_not_change_output(self):
        parallel = ExperimentConfig(**{**TINY.to_dict(), "workers": 3})
        assert fnr_csv(run_fnr_grid(parallel)) == fnr_csv(run_fnr_grid(TINY))

    def test_all_found_cell_reports_zero(self):
        cells = run_fnr_grid(TINY)
        clean = [c for c in cells if c.failures == 0]
        assert clean
        assert all(c.fnr == 0.0 for c in clean)

    def test_overall_stats(self):
        cells = run_fnr_grid(TINY)
        stats = overall_stats(cells)
        assert stats["trials"] == sum(c.trials for c in cells)
        assert 0.0 <= stats["success_rate"] <= 1.0


class TestExhaustive:
    def test_all_labellings_distinct(self):
        rows = all_labellings(4)
        assert rows.shape == (16, 4)
        assert len({r.tobytes() for r in rows}) == 16

    def test_n2_full_sweep_zero_failures(self):
        report = run_exhaustive_smalln(2, 4, seed=1)
        assert report.total_planned == 4 * (4 + 6 + 4 + 1)
        assert report.trials == report.total_planned
        assert report.failures == 0
        assert report.coverage == 1.0
        assert report.pair_failures == 0

    def test_max_runs_reports_partial_coverage(self):
        report = run_exhaustive_smalln(3, 2, seed=1, max_runs=50)
        assert report.trials == 50
        assert 0 < report.coverage < 1

    def test_rejects_large_n(self):
        with pytest.raises(ValueError):
            run_exhaustive_smalln(6, 2)

    def test_report_serialises(self):
        report = run_exhaustive_smalln(2, 2, seed=0)
        payload = report.to_dict()
        assert payload["failures"] == 0
        assert payload["coverage"] == 1.0
