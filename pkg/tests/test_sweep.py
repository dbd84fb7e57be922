from fractions import Fraction

import pytest

from regular_loops.config import Budgets
from regular_loops.errors import ConvergenceFailure, InvalidConfig, InvalidInputError, MissingCounts, MissingPerron
from regular_loops.experiments import (
    CSV_COLUMNS,
    SweepConfig,
    Thresholds,
    TransitionPoint,
    check_transition,
    plan_cells,
    run_sweep,
    transition_curve,
)
from regular_loops.graphs import cell_stream_index
from regular_loops.loops import CountMethod
from regular_loops.theory import exact_expected_simple


def small_config(**overrides):
    settings = dict(d=3, n_values=[6, 8], k_values=[1, 2, 3, 4], replicates=4, seed=7, budgets=Budgets())
    settings.update(overrides)
    return SweepConfig(**settings)


class TestSweepConfig:
    def test_methods_are_normalized(self):
        config = small_config(methods=["spectral", "dfs"])
        assert config.methods == (CountMethod.DFS, CountMethod.SPECTRAL)

    def test_rejects_odd_half_edges(self):
        with pytest.raises(InvalidConfig):
            small_config(n_values=[5])

    def test_rejects_zero_replicates(self):
        with pytest.raises(InvalidConfig):
            small_config(replicates=0)

    def test_from_yaml(self, tmp_path):
        path = tmp_path / "sweep.yaml"
        path.write_text(
            "d: 3\nn_values: [10]\nk_values: [3, 4]\nreplicates: 2\nseed: 11\n"
            "model: uniform-simple\nmethods: dfs,spectral\nbudgets:\n  direct: 100\n",
            encoding="utf-8",
        )
        config = SweepConfig.from_yaml(path, Budgets())
        assert config.n_values == (10,)
        assert config.methods == (CountMethod.DFS, CountMethod.SPECTRAL)
        assert config.budgets.direct == 100
        assert config.budgets.trace == Budgets().trace
        assert config.to_dict()["model"] == "uniform-simple"

    def test_unknown_keys(self):
        with pytest.raises(InvalidConfig, match="replicatse"):
            SweepConfig.from_dict({"d": 3, "n_values": [4], "k_values": [1], "replicatse": 2, "seed": 1})

    def test_incomplete(self):
        with pytest.raises(InvalidConfig):
            SweepConfig.from_dict({"d": 3, "n_values": [4]}, Budgets())

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "sweep.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(InvalidConfig):
            SweepConfig.from_yaml(path)


class TestPlan:
    def test_trace_budget_skips_cells(self):
        config = small_config(budgets=Budgets(trace=10))
        plan = plan_cells(config)
        assert plan[(6, 1, "dfs")] is None
        assert "trace budget" in plan[(6, 1, "exact-trace")]

    def test_spectral_multigraphs_beyond_direct_budget(self):
        config = small_config(methods=["spectral"], budgets=Budgets(direct=20))
        plan = plan_cells(config)
        assert plan[(6, 3, "spectral")] is None
        assert plan[(8, 3, "spectral")] is not None


class TestRunSweep:
    def test_deterministic(self):
        config = small_config()
        first = run_sweep(config, workers=1)
        second = run_sweep(config, workers=1)
        assert first.to_csv() == second.to_csv()
        assert first.to_json() == second.to_json()

    def test_worker_count_does_not_change_output(self):
        config = small_config()
        assert run_sweep(config, workers=1).to_json() == run_sweep(config, workers=2).to_json()

    def test_seed_changes_output(self):
        assert run_sweep(small_config(), workers=1).to_csv() != run_sweep(small_config(seed=8), workers=1).to_csv()

    def test_stream_indices(self):
        result = run_sweep(small_config(), workers=1)
        row = result.row(8, 3, "dfs")
        assert row.stream_indices == [cell_stream_index(1, r) for r in range(4)]

    def test_csv_layout(self):
        text = run_sweep(small_config(), workers=1).to_csv()
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 1 + 2 * 4 * 2
        assert text.endswith("\n")

    def test_budget_skip_is_reported(self):
        result = run_sweep(small_config(budgets=Budgets(trace=10)), workers=1)
        row = result.row(6, 2, "exact-trace")
        assert row.skipped
        assert row.ratio_R is None
        assert row.csv_record()["skipped"] == "true"
        assert not result.row(6, 2, "dfs").skipped

    def test_ratio_uses_dfs_numerator(self):
        result = run_sweep(small_config(), workers=1)
        rows = [r for r in result.rows if r.method == "exact-trace" and r.mean_ntr]
        assert rows
        for row in rows:
            assert row.nsimp_source == "dfs"
            assert row.ratio_R == pytest.approx(row.k * row.mean_nsimp / row.mean_ntr)

    def test_ratio_falls_back_to_expectation(self):
        row = run_sweep(small_config(methods=["exact-trace"]), workers=1).row(8, 4, "exact-trace")
        assert row.nsimp_source == "exact-expectation"
        assert row.mean_nsimp == pytest.approx(float(exact_expected_simple(3, 8, 4)))

    def test_uniform_simple_fallback_is_labelled(self):
        config = small_config(model="uniform-simple", n_values=[6], k_values=[3], replicates=50,
                              methods=["exact-trace"])
        row = run_sweep(config, workers=1).row(6, 3, "exact-trace")
        assert row.nsimp_source == "configuration-expectation"
        assert row.ratio_R is not None
        assert row.ratio_CI_low is None and row.ratio_CI_high is None
        assert row.csv_record()["nsimp_source"] == "configuration-expectation"

    def test_uniform_simple_triangles_are_simple(self):
        config = small_config(model="uniform-simple", n_values=[6], k_values=[3], replicates=50,
                              methods=["dfs", "exact-trace"])
        row = run_sweep(config, workers=1).row(6, 3, "exact-trace")
        assert row.nsimp_source == "dfs"
        assert row.ratio_R == pytest.approx(1.0)

    def test_configuration_fallback_keeps_interval(self):
        row = run_sweep(small_config(methods=["exact-trace"]), workers=1).row(8, 4, "exact-trace")
        assert row.nsimp_source == "exact-expectation"
        assert row.ratio_CI_low is not None

    @pytest.mark.parametrize(
        "error", [MissingPerron("no eigenvalue near d-1"), ConvergenceFailure("eigensolver failed")]
    )
    def test_spectral_failure_skips_cell(self, monkeypatch, error):
        def failing_traces(*args, **kwargs):
            raise error

        monkeypatch.setattr("regular_loops.experiments.sweep.spectral_traces", failing_traces)
        config = small_config(model="uniform-simple", n_values=[8], methods=["exact-trace", "spectral"])
        result = run_sweep(config, workers=1)
        for k in config.k_values:
            spectral = result.row(8, k, "spectral")
            assert spectral.skipped
            assert str(error) in spectral.skip_reason
            assert spectral.ratio_R is None
            assert not result.row(8, k, "exact-trace").skipped

    def test_spectral_matches_exact_traces(self):
        config = small_config(model="uniform-simple", methods=["exact-trace", "spectral"], n_values=[8])
        result = run_sweep(config, workers=1)
        for k in config.k_values:
            exact = result.row(8, k, "exact-trace")
            spectral = result.row(8, k, "spectral")
            assert spectral.mean_ntr == pytest.approx(exact.mean_ntr, rel=1e-6, abs=1e-6)
            assert spectral.share_lambda is not None

    def test_degree_one_leaves_ratio_undefined(self):
        result = run_sweep(SweepConfig(d=1, n_values=[4], k_values=[1, 2], replicates=3, seed=1), workers=1)
        row = result.row(4, 2, "exact-trace")
        assert row.ratio_undefined
        assert row.csv_record()["ratio_R"] == ""
        assert result.row(4, 2, "dfs").mean_nsimp == 0

    def test_self_loop_mean(self):
        config = SweepConfig(d=3, n_values=[2], k_values=[1], replicates=2000, seed=2024, methods=["dfs"])
        row = run_sweep(config, workers=1).row(2, 1, "dfs")
        expected = float(exact_expected_simple(3, 2, 1))
        assert expected == float(Fraction(12, 5))
        assert abs(row.mean_nsimp - expected) <= 3 * row.se_nsimp

    def test_write(self, tmp_path):
        csv_path, json_path = run_sweep(small_config(replicates=2), workers=1).write(tmp_path / "out")
        assert csv_path.name == "out.csv"
        assert json_path.read_text(encoding="utf-8").startswith("{")


class TestTransition:
    def test_curve_prefers_exact_traces(self):
        result = run_sweep(small_config(methods=["dfs", "exact-trace", "spectral"]), workers=1)
        curve = transition_curve(result, n=8)
        assert [p.k for p in curve] == [1, 2, 3, 4]
        assert all(p.method == "exact-trace" for p in curve)

    def test_curve_needs_a_single_n(self):
        result = run_sweep(small_config(), workers=1)
        with pytest.raises(InvalidInputError):
            transition_curve(result)

    def test_curve_without_traces(self):
        result = run_sweep(small_config(methods=["dfs"], n_values=[6]), workers=1)
        with pytest.raises(MissingCounts):
            transition_curve(result)

    def test_check_transition(self):
        def point(k, ratio):
            return TransitionPoint(n=400, k=k, ratio=ratio, ci_low=None, ci_high=None, method="exact-trace",
                                   nsimp_source="dfs")

        good = [point(5, 0.97), point(20, 0.6), point(80, 0.05)]
        assert check_transition(good) == []
        bad = [point(5, 0.8), point(20, 0.9), point(80, 0.2)]
        assert len(check_transition(bad)) == 3
        assert check_transition([point(5, 0.85)], Thresholds(low_min_ratio=0.8)) == []
