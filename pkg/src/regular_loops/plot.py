"""
Self-contained SVG line charts from sweep CSV files.

Output depends only on the input rows: no timestamps, fixed number
formatting, series ordered by their numeric key.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from regular_loops.errors import EmptyInput, InvalidInputError, MissingColumn

logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 70
MARGIN_RIGHT = 130
MARGIN_TOP = 30
MARGIN_BOTTOM = 50
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]

Series = Dict[str, List[Tuple[float, float]]]


def _number(value: str, column: str) -> float:
    try:
        return float(value)
    except ValueError as e:
        raise InvalidInputError(f"column {column!r} holds a non-numeric value {value!r}") from e


def _sort_key(label: str) -> Tuple[int, float, str]:
    try:
        return 0, float(label), label
    except ValueError:
        return 1, 0.0, label


def read_series(
    csv_path: Union[str, Path],
    x_column: str,
    y_column: str,
    series_column: str = "n",
    where: Optional[Mapping[str, str]] = None,
) -> Series:
    """Points grouped by series; rows with an empty x or y are left out"""
    with open(csv_path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames
        if not header:
            raise EmptyInput(f"{csv_path} has no header row")
        required = [x_column, y_column, series_column] + list(where or {})
        for column in required:
            if column not in header:
                raise MissingColumn(f"{csv_path} has no column {column!r} (columns: {', '.join(header)})")
        rows = list(reader)
    if not rows:
        raise EmptyInput(f"{csv_path} has no data rows")

    series: Series = {}
    for row in rows:
        if where and any(row.get(column) != value for column, value in where.items()):
            continue
        if not row[x_column] or not row[y_column]:
            continue
        point = (_number(row[x_column], x_column), _number(row[y_column], y_column))
        series.setdefault(row[series_column], []).append(point)
    if not series:
        raise EmptyInput(f"{csv_path} has no plottable {x_column}/{y_column} values")
    return {label: sorted(points) for label, points in sorted(series.items(), key=lambda kv: _sort_key(kv[0]))}


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_svg(series: Series, x_label: str, y_label: str, log_x: bool = False, series_label: str = "n") -> str:
    xs = [x for points in series.values() for x, _ in points]
    ys = [y for points in series.values() for _, y in points]
    if log_x and min(xs) <= 0:
        raise InvalidInputError("log-scaled x needs positive values")
    transform = math.log10 if log_x else (lambda v: v)
    x_min, x_max = transform(min(xs)), transform(max(xs))
    y_min, y_max = min(ys), max(ys)
    if x_max == x_min:
        x_min, x_max = x_min - 1, x_max + 1
    if y_max == y_min:
        y_min, y_max = y_min - 1, y_max + 1
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (transform(x) - x_min) / (x_max - x_min) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h

    bottom = MARGIN_TOP + plot_h
    right = MARGIN_LEFT + plot_w
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<line x1="{MARGIN_LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="#000000"/>',
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{bottom}" stroke="#000000"/>',
    ]
    for value in sorted(set(xs)):
        lines.append(
            f'<text x="{_fmt(px(value))}" y="{bottom + 18}" font-size="11" text-anchor="middle">{value:g}</text>'
        )
    for value in (min(ys), max(ys)):
        lines.append(
            f'<text x="{MARGIN_LEFT - 6}" y="{_fmt(py(value) + 4)}" font-size="11" text-anchor="end">{value:.4g}</text>'
        )
    scale_note = " (log scale)" if log_x else ""
    lines.append(
        f'<text x="{_fmt(MARGIN_LEFT + plot_w / 2)}" y="{HEIGHT - 10}" font-size="12" '
        f'text-anchor="middle">{x_label}{scale_note}</text>'
    )
    lines.append(
        f'<text x="15" y="{_fmt(MARGIN_TOP + plot_h / 2)}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 15 {_fmt(MARGIN_TOP + plot_h / 2)})">{y_label}</text>'
    )
    for index, (label, points) in enumerate(series.items()):
        color = PALETTE[index % len(PALETTE)]
        coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in points)
        lines.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>')
        for x, y in points:
            lines.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="3" fill="{color}"/>')
        legend_y = MARGIN_TOP + 16 * index + 10
        lines.append(f'<line x1="{right + 15}" y1="{legend_y}" x2="{right + 35}" y2="{legend_y}" stroke="{color}"/>')
        lines.append(f'<text x="{right + 40}" y="{legend_y + 4}" font-size="11">{series_label}={label}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_plot(
    csv_path: Union[str, Path],
    x_column: str,
    y_column: str,
    out_svg: Union[str, Path],
    log_x: bool = False,
    series_column: str = "n",
    where: Optional[Mapping[str, str]] = None,
) -> Path:
    """Write one polyline per series value of the CSV to out_svg"""
    series = read_series(csv_path, x_column, y_column, series_column, where)
    out = Path(out_svg)
    out.write_text(render_svg(series, x_column, y_column, log_x, series_column), encoding="utf-8")
    logger.info(f"Wrote {out} ({len(series)} series)")
    return out
