import pytest

from regular_loops.errors import EmptyInput, MissingColumn
from regular_loops.plot import emit_plot, read_series, render_svg

CSV = """n,k,method,ratio_R
400,5,exact-trace,0.97
400,20,exact-trace,0.62
400,80,exact-trace,0.05
100,5,exact-trace,0.9
100,20,exact-trace,
100,5,dfs,
"""


@pytest.fixture
def sweep_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    path.write_text(CSV, encoding="utf-8")
    return path


class TestReadSeries:
    def test_groups_by_series(self, sweep_csv):
        series = read_series(sweep_csv, "k", "ratio_R")
        assert list(series) == ["100", "400"]
        assert series["400"] == [(5.0, 0.97), (20.0, 0.62), (80.0, 0.05)]
        assert series["100"] == [(5.0, 0.9)]

    def test_where_filter(self, sweep_csv):
        series = read_series(sweep_csv, "k", "ratio_R", where={"n": "400"})
        assert list(series) == ["400"]

    def test_missing_column(self, sweep_csv):
        with pytest.raises(MissingColumn):
            read_series(sweep_csv, "k", "mean_nprim")

    def test_empty(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("n,k,ratio_R\n", encoding="utf-8")
        with pytest.raises(EmptyInput):
            read_series(path, "k", "ratio_R")


class TestEmitPlot:
    def test_deterministic(self, sweep_csv, tmp_path):
        first = emit_plot(sweep_csv, "k", "ratio_R", tmp_path / "a.svg").read_text(encoding="utf-8")
        second = emit_plot(sweep_csv, "k", "ratio_R", tmp_path / "b.svg").read_text(encoding="utf-8")
        assert first == second
        assert first.startswith("<svg")
        assert first.count("<polyline") == 2
        assert "n=400" in first

    def test_log_scale(self, sweep_csv, tmp_path):
        text = emit_plot(sweep_csv, "k", "ratio_R", tmp_path / "log.svg", log_x=True).read_text(encoding="utf-8")
        assert "(log scale)" in text

    def test_single_point_series(self):
        svg = render_svg({"8": [(3.0, 1.0)]}, "k", "ratio_R")
        assert svg.count("<circle") == 1
