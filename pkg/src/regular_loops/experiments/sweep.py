"""
Monte Carlo sweeps over (n, k) grids.

One graph is drawn per (n, replicate) and every requested length k is
counted on it, so the stream of replicate r at the i-th n value is
cell_stream_index(i, r) under the configured seed. Which methods run in a
cell is decided up front from the configuration alone; a cell that cannot
run a method is reported as skipped and is never approximated.
"""

import csv
import io
import json
import logging
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import yaml

from regular_loops.config import Budgets, get_worker_count
from regular_loops.errors import (
    BudgetError,
    ConvergenceFailure,
    InvalidConfig,
    MissingPerron,
    SpectralUnavailable,
)
from regular_loops.experiments.estimators import concentration_check, estimate_moments, ratio_estimate
from regular_loops.experiments.survey import gap_flags
from regular_loops.graphs.factory import GraphModel, GraphModelFactory
from regular_loops.graphs.rng import RngStream, cell_stream_index
from regular_loops.loops.arith import divisors
from regular_loops.loops.census import (
    CountMethod,
    LoopCensus,
    check_census,
    closed_nb_walk_traces,
    count_simple_loops,
    estimate_dfs_cost,
    primitive_from_spectral_traces,
    primitive_from_traces,
    spectral_traces,
)
from regular_loops.theory import exact_expected_simple

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "d",
    "n",
    "k",
    "model",
    "method",
    "replicates",
    "mean_nsimp",
    "se_nsimp",
    "mean_ntr",
    "se_ntr",
    "mean_nprim",
    "second_moment_nsimp",
    "ratio_R",
    "ratio_CI_low",
    "ratio_CI_high",
    "conc_fraction",
    "share_lambda",
    "share_mu",
    "skipped",
    "nsimp_source",
]

METHOD_ORDER = [CountMethod.DFS, CountMethod.EXACT_TRACE, CountMethod.SPECTRAL]

NSIMP_FROM_DFS = "dfs"
NSIMP_FROM_EXPECTATION = "exact-expectation"
NSIMP_FROM_CONFIGURATION = "configuration-expectation"


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    d: int
    n_values: Tuple[int, ...]
    k_values: Tuple[int, ...]
    replicates: int
    seed: int
    model: GraphModel = GraphModel.CONFIGURATION
    methods: Tuple[CountMethod, ...] = (CountMethod.DFS, CountMethod.EXACT_TRACE)
    budgets: Budgets = field(default_factory=Budgets)
    epsilon: float = 0.25
    gap_epsilon: float = 0.1

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        object.__setattr__(self, "model", GraphModel.parse(self.model))
        parsed = {CountMethod.parse(m) for m in self.methods}
        object.__setattr__(self, "methods", tuple(m for m in METHOD_ORDER if m in parsed))
        self.validate()

    def validate(self) -> None:
        if self.d < 1:
            raise InvalidConfig(f"d must be positive, got {self.d}")
        if not self.n_values or not self.k_values:
            raise InvalidConfig("n_values and k_values must be non-empty")
        if self.replicates < 1:
            raise InvalidConfig(f"replicates must be >= 1, got {self.replicates}")
        if not self.methods:
            raise InvalidConfig("at least one counting method is required")
        for n in self.n_values:
            if n < 1 or (n * self.d) % 2:
                raise InvalidConfig(f"n={n} is invalid for d={self.d}: n must be positive and n*d even")
        if any(k < 1 for k in self.k_values):
            raise InvalidConfig(f"lengths must be >= 1, got {list(self.k_values)}")
        if not 0 < self.epsilon < 1 or self.gap_epsilon <= 0:
            raise InvalidConfig("epsilon must lie in (0, 1) and gap_epsilon must be positive")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], budgets: Optional[Budgets] = None) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidConfig(f"unknown sweep keys: {', '.join(unknown)}")
        values = dict(data)
        base = budgets or Budgets.from_env()
        budget_overrides = values.pop("budgets", None) or {}
        if not isinstance(budget_overrides, Mapping):
            raise InvalidConfig("budgets must be a mapping of limit name to integer")
        values["budgets"] = base.with_overrides(**budget_overrides)
        if isinstance(values.get("methods"), str):
            values["methods"] = [m for m in values["methods"].split(",") if m.strip()]
        try:
            return cls(**values)
        except TypeError as e:
            raise InvalidConfig(f"incomplete sweep configuration: {e}") from e

    @classmethod
    def from_yaml(cls, path: Union[str, Path], budgets: Optional[Budgets] = None) -> "SweepConfig":
        try:
            data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        except yaml.YAMLError as e:
            raise InvalidConfig(f"{path} is not valid YAML: {e}") from e
        if not isinstance(data, Mapping):
            raise InvalidConfig(f"{path} must contain a mapping of sweep settings")
        return cls.from_dict(data, budgets)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "n_values": list(self.n_values),
            "k_values": list(self.k_values),
            "replicates": self.replicates,
            "seed": self.seed,
            "model": self.model.value,
            "methods": [m.value for m in self.methods],
            "budgets": self.budgets.as_dict(),
            "epsilon": self.epsilon,
            "gap_epsilon": self.gap_epsilon,
        }


def plan_cells(config: SweepConfig) -> Dict[Tuple[int, int, str], Optional[str]]:
    """Skip reason (or None) for every (n, k, method) cell, from the configuration alone"""
    plan: Dict[Tuple[int, int, str], Optional[str]] = {}
    d, budgets = config.d, config.budgets
    for n in config.n_values:
        for k in config.k_values:
            for method in config.methods:
                reason = None
                if method is CountMethod.DFS and k <= n:
                    cost = estimate_dfs_cost(d, n, k)
                    if cost > budgets.dfs:
                        reason = f"estimated {cost:.3g} path expansions exceed the dfs budget {budgets.dfs}"
                elif method is CountMethod.EXACT_TRACE and n * d * k > budgets.trace:
                    reason = f"n*d*k = {n * d * k} exceeds the trace budget {budgets.trace}"
                elif method is CountMethod.SPECTRAL:
                    if d < 2:
                        reason = "spectral traces need d >= 2"
                    elif config.model is GraphModel.CONFIGURATION and n * d > budgets.direct:
                        reason = f"configuration-model multigraphs with n*d = {n * d} exceed the direct budget"
                plan[(n, k, method.value)] = reason
    return plan


# ---------------------------------------------------------------------------
# Replicates
# ---------------------------------------------------------------------------


@dataclass
class ReplicateRecord:
    n_index: int
    replicate: int
    stream_index: int
    counts: Dict[Tuple[int, str], Any] = field(default_factory=dict)
    failures: Dict[Tuple[int, str], str] = field(default_factory=dict)
    gap: Optional[Tuple[bool, bool, bool]] = None


def _runnable(plan: Mapping[Tuple[int, int, str], Optional[str]], n: int, ks: Sequence[int], method: CountMethod):
    return [k for k in ks if (n, k, method.value) in plan and plan[(n, k, method.value)] is None]


def run_replicate(task: Tuple[SweepConfig, Dict[Tuple[int, int, str], Optional[str]], int, int]) -> ReplicateRecord:
    """Sample one graph and count every planned (k, method) on it"""
    config, plan, n_index, replicate = task
    d, n, budgets = config.d, config.n_values[n_index], config.budgets
    stream_index = cell_stream_index(n_index, replicate)
    record = ReplicateRecord(n_index=n_index, replicate=replicate, stream_index=stream_index)
    sampler = GraphModelFactory.create_sampler(config.model, budgets)
    g = sampler(d, n, RngStream(config.seed, stream_index))

    for k in _runnable(plan, n, config.k_values, CountMethod.DFS):
        try:
            record.counts[(k, "n_simp")] = count_simple_loops(g, k, budgets.dfs) if k <= n else 0
        except BudgetError as e:
            record.failures[(k, CountMethod.DFS.value)] = str(e)

    exact_ks = _runnable(plan, n, config.k_values, CountMethod.EXACT_TRACE)
    if exact_ks:
        try:
            traces = closed_nb_walk_traces(g, max(exact_ks), budgets.trace)
            for k in exact_ks:
                record.counts[(k, "n_tr")] = traces[k - 1]
                record.counts[(k, "n_prim")] = primitive_from_traces(traces, k)
        except BudgetError as e:
            for k in exact_ks:
                record.failures[(k, CountMethod.EXACT_TRACE.value)] = str(e)

    spectral_ks = _runnable(plan, n, config.k_values, CountMethod.SPECTRAL)
    if spectral_ks:
        lengths = sorted({r for k in spectral_ks for r in divisors(k)})
        try:
            traces_by_length = spectral_traces(g, lengths, budgets)
            for k in spectral_ks:
                record.counts[(k, "n_tr_spectral")] = traces_by_length[k].value
                record.counts[(k, "n_prim_spectral")] = primitive_from_spectral_traces(traces_by_length, k).value
            record.gap = gap_flags(g, config.gap_epsilon, budgets)
        except (BudgetError, SpectralUnavailable, MissingPerron, ConvergenceFailure) as e:
            for k in spectral_ks:
                record.failures[(k, CountMethod.SPECTRAL.value)] = str(e)

    for k in config.k_values:
        census = LoopCensus(
            k=k,
            n_simp=record.counts.get((k, "n_simp")),
            n_prim=record.counts.get((k, "n_prim")),
            n_tr=record.counts.get((k, "n_tr")),
        )
        check_census(g, census)
    return record


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------


@dataclass
class SweepRow:
    d: int
    n: int
    k: int
    model: str
    method: str
    replicates: int
    stream_indices: List[int]
    skipped: bool = False
    skip_reason: Optional[str] = None
    mean_nsimp: Optional[float] = None
    se_nsimp: Optional[float] = None
    mean_ntr: Optional[float] = None
    se_ntr: Optional[float] = None
    mean_nprim: Optional[float] = None
    second_moment_nsimp: Optional[float] = None
    ratio_R: Optional[float] = None
    ratio_CI_low: Optional[float] = None
    ratio_CI_high: Optional[float] = None
    ratio_undefined: bool = False
    conc_fraction: Optional[float] = None
    share_lambda: Optional[float] = None
    share_mu: Optional[float] = None
    mu_violations: Optional[int] = None
    nsimp_source: Optional[str] = None
    ratio_median: Optional[float] = None
    event_simple_share: Optional[float] = None
    event_nonsimple_share: Optional[float] = None
    prim_conc_fraction: Optional[float] = None
    samples: Dict[str, List[Any]] = field(default_factory=dict)

    def csv_record(self) -> Dict[str, str]:
        return {column: _csv_value(getattr(self, column)) for column in CSV_COLUMNS}

    def to_json(self) -> Dict[str, Any]:
        payload = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "samples"}
        payload["samples"] = {
            name: [str(v) if isinstance(v, int) else v for v in values] for name, values in self.samples.items()
        }
        return payload


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _mean_and_se(samples: Sequence[Any]) -> Tuple[float, Optional[float], Optional[float]]:
    """(mean, standard error, second moment); one replicate has no standard error"""
    if len(samples) >= 2:
        moments = estimate_moments(samples)
        return moments.mean, moments.standard_error, moments.second_moment
    value = float(samples[0])
    return value, None, value * value


def _share(flags: Sequence[bool]) -> float:
    return sum(1 for flag in flags if flag) / len(flags)


def _fill_dfs(row: SweepRow, nsimp: List[int], config: SweepConfig) -> None:
    row.samples["n_simp"] = nsimp
    row.mean_nsimp, row.se_nsimp, row.second_moment_nsimp = _mean_and_se(nsimp)
    row.nsimp_source = NSIMP_FROM_DFS
    if config.d >= 2:
        center = (config.d - 1) ** row.k / row.k
        row.conc_fraction = concentration_check(nsimp, center, config.epsilon)


def _fill_trace(
    row: SweepRow,
    ntr: List[Any],
    nprim: List[Any],
    nsimp: Optional[List[int]],
    config: SweepConfig,
) -> None:
    k, eps = row.k, config.epsilon
    row.samples["n_tr"] = ntr
    row.samples["n_prim"] = nprim
    row.mean_ntr, row.se_ntr, _ = _mean_and_se(ntr)
    row.mean_nprim = _mean_and_se(nprim)[0]

    if nsimp is not None:
        numerators: List[Any] = nsimp
        row.nsimp_source = NSIMP_FROM_DFS
        row.mean_nsimp, row.se_nsimp, _ = _mean_and_se(nsimp)
    else:
        # the closed form is exact for the configuration model only
        expected = exact_expected_simple(config.d, row.n, k)
        numerators = [float(expected)] * len(ntr)
        row.mean_nsimp = float(expected)
        if config.model is GraphModel.CONFIGURATION:
            row.nsimp_source = NSIMP_FROM_EXPECTATION
        else:
            row.nsimp_source = NSIMP_FROM_CONFIGURATION

    ratio = ratio_estimate(numerators, ntr, scale=k)
    row.ratio_R, row.ratio_CI_low, row.ratio_CI_high = ratio.value, ratio.ci_low, ratio.ci_high
    if row.nsimp_source == NSIMP_FROM_CONFIGURATION:
        row.ratio_CI_low = row.ratio_CI_high = None
        logger.warning(
            f"R({k}) at n={row.n}, method={row.method} uses the configuration-model expectation "
            f"for {config.model.value} graphs; no interval is reported"
        )
    row.ratio_undefined = ratio.undefined
    if ratio.undefined:
        logger.info(f"R(k) undefined at n={row.n}, k={k}, method={row.method}: no closed walks sampled")

    if config.d >= 2:
        scale = (config.d - 1) ** k / k
        row.prim_conc_fraction = concentration_check(nprim, scale, eps)
    if nsimp is not None:
        per_graph = [k * s / t for s, t in zip(nsimp, ntr) if t > 0]
        row.ratio_median = statistics.median(per_graph) if per_graph else None
        row.event_simple_share = _share([s >= (1 - eps) * p for s, p in zip(nsimp, nprim)])
        row.event_nonsimple_share = _share([s <= eps * p for s, p in zip(nsimp, nprim)])


def _aggregate(config: SweepConfig, plan, records: List[ReplicateRecord]) -> List[SweepRow]:
    rows: List[SweepRow] = []
    by_n: Dict[int, List[ReplicateRecord]] = {}
    for record in records:
        by_n.setdefault(record.n_index, []).append(record)

    for n_index, n in enumerate(config.n_values):
        cell_records = sorted(by_n.get(n_index, []), key=lambda r: r.replicate)
        streams = [r.stream_index for r in cell_records]
        for k in config.k_values:

            def failure(method: CountMethod) -> Optional[str]:
                reason = plan[(n, k, method.value)]
                if reason is None:
                    key = (k, method.value)
                    reason = next((r.failures[key] for r in cell_records if key in r.failures), None)
                return reason

            dfs_ok = CountMethod.DFS in config.methods and failure(CountMethod.DFS) is None
            nsimp = [r.counts[(k, "n_simp")] for r in cell_records] if dfs_ok else None

            for method in config.methods:
                row = SweepRow(
                    d=config.d,
                    n=n,
                    k=k,
                    model=config.model.value,
                    method=method.value,
                    replicates=len(cell_records),
                    stream_indices=streams,
                )
                reason = failure(method)
                if reason is not None:
                    row.skipped = True
                    row.skip_reason = reason
                    logger.info(f"Skipping {method.value} at n={n}, k={k}: {reason}")
                elif method is CountMethod.DFS:
                    _fill_dfs(row, nsimp or [], config)
                elif method is CountMethod.EXACT_TRACE:
                    ntr = [r.counts[(k, "n_tr")] for r in cell_records]
                    nprim = [r.counts[(k, "n_prim")] for r in cell_records]
                    _fill_trace(row, ntr, nprim, nsimp, config)
                else:
                    ntr = [r.counts[(k, "n_tr_spectral")] for r in cell_records]
                    nprim = [r.counts[(k, "n_prim_spectral")] for r in cell_records]
                    _fill_trace(row, ntr, nprim, nsimp, config)
                    gaps = [r.gap for r in cell_records if r.gap is not None]
                    if gaps:
                        row.share_lambda = _share([g[0] for g in gaps])
                        row.share_mu = _share([g[1] for g in gaps])
                        row.mu_violations = sum(1 for g in gaps if g[2])
                rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass
class SweepResult:
    config: SweepConfig
    rows: List[SweepRow]

    def row(self, n: int, k: int, method: Union[str, CountMethod]) -> SweepRow:
        wanted = CountMethod.parse(method).value
        for row in self.rows:
            if row.n == n and row.k == k and row.method == wanted:
                return row
        raise KeyError(f"no row for n={n}, k={k}, method={wanted}")

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row.csv_record())
        return buffer.getvalue()

    def to_json(self) -> str:
        payload = {"config": self.config.to_dict(), "rows": [row.to_json() for row in self.rows]}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def write(self, prefix: Union[str, Path]) -> Tuple[Path, Path]:
        """Write PREFIX.csv and PREFIX.json"""
        prefix = Path(prefix)
        csv_path = prefix.parent / f"{prefix.name}.csv"
        json_path = prefix.parent / f"{prefix.name}.json"
        csv_path.write_text(self.to_csv(), encoding="utf-8")
        json_path.write_text(self.to_json(), encoding="utf-8")
        logger.info(f"Wrote {csv_path} and {json_path}")
        return csv_path, json_path


def run_sweep(config: SweepConfig, workers: Optional[int] = None) -> SweepResult:
    """
    Run every replicate of every n value and aggregate in replicate order.

    Args:
        config: the sweep grid, model, methods and budgets
        workers: process count; RLG_THREADS when not given

    Returns:
        SweepResult whose serialized form depends on config only
    """
    workers = get_worker_count() if workers is None else max(1, workers)
    plan = plan_cells(config)
    tasks = [
        (config, plan, n_index, replicate)
        for n_index in range(len(config.n_values))
        for replicate in range(config.replicates)
    ]
    logger.info(
        f"Sweep d={config.d} n={list(config.n_values)} k={list(config.k_values)}: "
        f"{len(tasks)} graphs on {workers} worker(s)"
    )
    if workers == 1:
        records = [run_replicate(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            records = list(executor.map(run_replicate, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    return SweepResult(config=config, rows=_aggregate(config, plan, records))
