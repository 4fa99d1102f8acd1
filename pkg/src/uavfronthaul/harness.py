"""Monte Carlo orchestration and parameter sweeps.

Randomness comes from one root seed. Each realization ``r`` draws from
independent substreams keyed by ``(r, purpose)``, so both placement methods
see the same TSBS layout and fading, and results do not depend on the
number of worker processes.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import ga
from .channel import FadingDraw, sample_fading
from .kmeans import kmeans_placement
from .metrics import EvalReport, report
from .scenario import ScenarioConfig, Tsbs, deploy_tsbss, tsbs_arrays, uav_array

METHODS = ("ga", "kmeans")
SWEEP_VARIABLES = ("bandwidth_cap", "link_cap", "backhaul_cap", "delta")
PURPOSES = {"tsbs": 0, "fading": 1, "ga": 2, "kmeans": 3}
MAX_DEPLOY_ATTEMPTS = 1000

CSV_HEADER = (
    "method", "sweep_var", "sweep_value", "runs",
    "sum_rate_mean", "sum_rate_se", "assoc_frac_mean", "assoc_frac_se",
    "avg_bw_mean", "energy_eff_mean", "total_power_mean",
)


def substream(seed: int, index: int, purpose: str, attempt: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index, PURPOSES[purpose], attempt)))


@dataclass(frozen=True)
class Realization:
    index: int
    tsbs_pos: np.ndarray
    demand: np.ndarray
    fading: FadingDraw
    attempts: int = 1

    @property
    def num_tsbs(self) -> int:
        return len(self.demand)

    def tsbss(self) -> list[Tsbs]:
        return [Tsbs(i, (float(p[0]), float(p[1])), float(r)) for i, (p, r) in enumerate(zip(self.tsbs_pos, self.demand))]

    def landscape(self, cfg: ScenarioConfig) -> ga.Landscape:
        return ga.Landscape(self.tsbs_pos, self.demand, self.fading, cfg)


def make_realization(cfg: ScenarioConfig, index: int) -> Realization:
    """Deploy TSBSs for realization ``index``, redrawing layouts with fewer than U TSBSs."""
    for attempt in range(MAX_DEPLOY_ATTEMPTS):
        tsbss = deploy_tsbss(cfg, substream(cfg.seed, index, "tsbs", attempt))
        if len(tsbss) >= max(cfg.num_uavs, 1):
            break
    else:
        raise RuntimeError(f"no deployment with >= {cfg.num_uavs} TSBSs after {MAX_DEPLOY_ATTEMPTS} attempts")
    pos, demand = tsbs_arrays(tsbss)
    fading = sample_fading(len(pos), cfg.num_uavs, cfg, substream(cfg.seed, index, "fading"))
    return Realization(index, pos, demand, fading, attempt + 1)


def place(method: str, real: Realization, cfg: ScenarioConfig):
    """UAV positions ``(U, 3)`` for ``method``; also the GA result when applicable."""
    if method == "ga":
        result = ga.run(real.landscape(cfg), cfg, substream(cfg.seed, real.index, "ga"))
        return result.best_positions, result
    if method == "kmeans":
        uavs = kmeans_placement(real.tsbss(), cfg, substream(cfg.seed, real.index, "kmeans"))
        return uav_array(uavs), None
    raise ValueError(f"unknown method {method!r}")


def evaluate_layout(real: Realization, positions, cfg: ScenarioConfig):
    """Associate and report for fixed UAV positions; returns ``(report, assoc)``."""
    assoc, _, table = real.landscape(cfg).solve(positions)
    return report(assoc, table, cfg), assoc


def run_realization(cfg: ScenarioConfig, method: str, index: int) -> EvalReport:
    real = make_realization(cfg, index)
    positions, _ = place(method, real, cfg)
    return evaluate_layout(real, positions, cfg)[0]


@dataclass(frozen=True)
class SweepSpec:
    variable: str | None = None
    values: tuple = ()
    methods: tuple[str, ...] = METHODS
    runs: int = 100
    reoptimize: bool = False

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if any(m not in METHODS for m in self.methods) or not self.methods:
            raise ValueError(f"methods must be a non-empty subset of {METHODS}")
        if self.variable is not None:
            if self.variable not in SWEEP_VARIABLES:
                raise ValueError(f"sweep variable must be one of {SWEEP_VARIABLES}")
            if not self.values or list(self.values) != sorted(self.values):
                raise ValueError("sweep values must be non-empty and ascending")

    def configs(self, cfg: ScenarioConfig) -> list[ScenarioConfig]:
        if self.variable is None:
            return [cfg]
        cast = int if self.variable == "link_cap" else float
        return [cfg.replace(**{self.variable: cast(v)}) for v in self.values]

    @property
    def fixed_positions(self) -> bool:
        # a different density is a different TSBS layout, so placements are redone
        return not self.reoptimize and self.variable != "delta"


def _sweep_worker(args):
    cfg, spec, index = args
    variants = spec.configs(cfg)
    reports: dict[tuple[int, str], EvalReport] = {}
    trace = None
    if spec.fixed_positions:
        real = make_realization(cfg, index)
        for method in spec.methods:
            positions, result = place(method, real, cfg)
            if result is not None:
                trace = result
            for k, cfg_v in enumerate(variants):
                reports[k, method] = evaluate_layout(real, positions, cfg_v)[0]
    else:
        for k, cfg_v in enumerate(variants):
            real = make_realization(cfg_v, index)
            for method in spec.methods:
                positions, result = place(method, real, cfg_v)
                if result is not None and trace is None:
                    trace = result
                reports[k, method] = evaluate_layout(real, positions, cfg_v)[0]
    return reports, trace


def _mean_se(values) -> tuple[float, float]:
    x = np.asarray(values, dtype=float)
    if len(x) < 2:
        return float(x.mean()), 0.0
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(len(x)))


@dataclass
class SweepResult:
    spec: SweepSpec
    reports: dict[tuple[int, str], list[EvalReport]]
    trace: ga.GaResult | None = None
    rows: list[dict] = field(default_factory=list)

    def series(self, method: str, metric: str, k: int = 0) -> np.ndarray:
        """Per-realization values of ``metric`` at sweep point ``k``."""
        return np.array([getattr(r, metric) for r in self.reports[k, method]])

    def means(self, method: str, metric: str) -> np.ndarray:
        n_values = max(k for k, _ in self.reports) + 1
        return np.array([self.series(method, metric, k).mean() for k in range(n_values)])


def run_sweep(cfg: ScenarioConfig, spec: SweepSpec, workers: int = 1) -> SweepResult:
    jobs = [(cfg, spec, r) for r in range(spec.runs)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_sweep_worker, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        outputs = [_sweep_worker(job) for job in jobs]

    n_values = len(spec.configs(cfg))
    reports = {(k, m): [out[0][k, m] for out in outputs] for k in range(n_values) for m in spec.methods}
    result = SweepResult(spec, reports, outputs[0][1])
    for k in range(n_values):
        value = spec.values[k] if spec.variable else ""
        for method in spec.methods:
            reps = reports[k, method]
            rate, rate_se = _mean_se([r.sum_rate for r in reps])
            frac, frac_se = _mean_se([r.assoc_fraction for r in reps])
            result.rows.append({
                "method": method,
                "sweep_var": spec.variable or "none",
                "sweep_value": value,
                "runs": spec.runs,
                "sum_rate_mean": rate,
                "sum_rate_se": rate_se,
                "assoc_frac_mean": frac,
                "assoc_frac_se": frac_se,
                "avg_bw_mean": float(np.mean([r.avg_bandwidth for r in reps])),
                "energy_eff_mean": float(np.mean([r.energy_eff for r in reps])),
                "total_power_mean": float(np.mean([r.total_power for r in reps])),
            })
    return result


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def write_rows_csv(rows, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in CSV_HEADER])


def write_rows_json(rows, fh) -> None:
    json.dump(rows, fh, indent=2, sort_keys=True)
    fh.write("\n")
