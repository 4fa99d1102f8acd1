"""Scenario configuration and ground/aerial deployments.

TSBS (terrestrial small-cell base station) positions come from a Matern
type-I hard-core process on a square region ``[0, area_side]^2``; child-UAVs
start uniformly inside the region and the altitude band.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

MBPS = 1e6
MHZ = 1e6
GBPS = 1e9


@dataclass(frozen=True)
class GaConfig:
    pop_size: int = 50
    elite_frac: float = 0.40
    mutation_rate: float = 0.09
    genes_mutated: int = 4
    max_generations: int = 50
    stall_generations: int = 5

    def __post_init__(self):
        if not 0.0 < self.elite_frac < 1.0:
            raise ValueError("elite_frac must lie in (0, 1)")
        if self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.genes_mutated < 0 or self.max_generations < 1 or self.stall_generations < 1:
            raise ValueError("genes_mutated >= 0, max_generations >= 1, stall_generations >= 1")
        if self.mutation_rate < 0:
            raise ValueError("mutation_rate must be non-negative")


@dataclass(frozen=True)
class ScenarioConfig:
    """All physical, constraint and algorithm parameters of one experiment.

    Units are SI throughout: metres, Hz, W, bit/s. Defaults describe a
    16 km^2 dense-urban area served by U = 4 UAVs with B = 200 MHz each.

    ``noise_dbw`` defaults to -155 dBW (-125 dBm); see README for why the
    noise floor is read in dBm. ``power_mode`` selects how a UAV's transmit
    power is derived from the interference threshold:

    * ``"broadcast"`` -- one power per UAV, the smallest per-link optimal
      power over all TSBSs, so the threshold holds at every TSBS;
    * ``"per_link"`` -- each pair uses its own optimal power.
    """

    area_side: float = 4000.0
    delta: float = 2e-6
    d_min: float = 250.0
    num_uavs: int = 4
    h_min: float = 300.0
    h_max: float = 800.0
    f_carrier: float = 2e9
    alpha: float = 9.61
    beta: float = 0.16
    xi_los: float = 1.0
    xi_nlos: float = 20.0
    gamma: float = 2.0
    m_los: float = 4.0
    m_nlos: float = 1.0
    psi_min: float = 0.0
    psi_max: float = 1.3
    i_th: float = 1.1943e-14
    noise_dbw: float = -155.0
    sinr_min_db: float = -10.0
    bandwidth_cap: float = 200 * MHZ
    link_cap: int = 7
    backhaul_cap: float = 1.66 * GBPS
    demand_menu: tuple[float, ...] = (20 * MBPS, 40 * MBPS, 60 * MBPS, 80 * MBPS, 100 * MBPS)
    epsilon: float = 1 / 0.38
    rho_c: float = 0.1
    baseline_height: float | None = None
    power_mode: str = "broadcast"
    ga: GaConfig = field(default_factory=GaConfig)
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.h_min <= self.h_max:
            raise ValueError("need 0 < h_min <= h_max")
        if self.psi_min > self.psi_max:
            raise ValueError("need psi_min <= psi_max")
        if self.delta < 0 or self.d_min < 0 or self.area_side <= 0:
            raise ValueError("delta, d_min must be >= 0 and area_side > 0")
        if min(self.bandwidth_cap, self.link_cap, self.backhaul_cap) < 0:
            raise ValueError("capacity limits must be non-negative")
        if self.num_uavs < 1:
            raise ValueError("num_uavs must be >= 1")
        if not self.demand_menu or min(self.demand_menu) <= 0:
            raise ValueError("demand_menu must be non-empty with positive entries")
        if self.power_mode not in ("broadcast", "per_link"):
            raise ValueError(f"unknown power_mode {self.power_mode!r}")
        if self.ga.genes_mutated > 3 * self.num_uavs:
            raise ValueError("genes_mutated cannot exceed the chromosome length 3*U")
        object.__setattr__(self, "demand_menu", tuple(float(r) for r in self.demand_menu))

    @property
    def area(self) -> float:
        return self.area_side**2

    @property
    def noise_w(self) -> float:
        return 10.0 ** (self.noise_dbw / 10.0)

    @property
    def sinr_min(self) -> float:
        return 10.0 ** (self.sinr_min_db / 10.0)

    @property
    def uav_height(self) -> float:
        """Altitude used by the k-means baseline."""
        if self.baseline_height is not None:
            return self.baseline_height
        return 0.5 * (self.h_min + self.h_max)

    def replace(self, **changes) -> "ScenarioConfig":
        ga_changes = {k[3:]: changes.pop(k) for k in list(changes) if k.startswith("ga_")}
        if ga_changes:
            changes["ga"] = dataclasses.replace(changes.get("ga", self.ga), **ga_changes)
        return dataclasses.replace(self, **changes)


def config_keys() -> list[str]:
    """Flat key names accepted by :func:`load_config` (GA keys are ``ga_``-prefixed)."""
    keys = [f.name for f in dataclasses.fields(ScenarioConfig) if f.name != "ga"]
    keys += ["ga_" + f.name for f in dataclasses.fields(GaConfig)]
    return keys


def config_from_mapping(values: dict, base: ScenarioConfig | None = None) -> ScenarioConfig:
    base = base or ScenarioConfig()
    unknown = set(values) - set(config_keys())
    if unknown:
        raise KeyError(f"unknown config keys: {sorted(unknown)}")
    values = {k: _coerce(k, v) for k, v in values.items()}
    return base.replace(**values)


_INT_KEYS = {"num_uavs", "link_cap", "seed", "ga_pop_size", "ga_genes_mutated",
             "ga_max_generations", "ga_stall_generations"}
_STR_KEYS = {"power_mode"}


def _coerce(key, value):
    # YAML 1.1 reads "3.0e8" (unsigned exponent) as a string, so cast by field
    if value is None or key in _STR_KEYS:
        return value
    if key == "demand_menu":
        return tuple(float(v) for v in value)
    if key in _INT_KEYS:
        return int(value)
    return float(value)


def load_config(path: str | Path) -> ScenarioConfig:
    """Read a flat ``key: value`` YAML file; missing keys keep their defaults."""
    with open(path) as fh:
        values = yaml.safe_load(fh) or {}
    if not isinstance(values, dict):
        raise ValueError(f"{path}: expected a flat mapping of key: value")
    return config_from_mapping(values)


def dump_config(cfg: ScenarioConfig) -> dict:
    out = {k: v for k, v in dataclasses.asdict(cfg).items() if k != "ga"}
    out["demand_menu"] = list(cfg.demand_menu)
    out.update({"ga_" + k: v for k, v in dataclasses.asdict(cfg.ga).items()})
    return out


@dataclass(frozen=True)
class Tsbs:
    id: int
    pos: tuple[float, float]
    demand: float


@dataclass(frozen=True)
class ChildUav:
    id: int
    pos: tuple[float, float, float]


def average_tsbs_count(cfg: ScenarioConfig) -> float:
    """Expected TSBS count of the stationary Matern type-I process in the area."""
    return cfg.delta * np.exp(-cfg.delta * np.pi * cfg.d_min**2) * cfg.area


def matern_type1(intensity, d_min, side, rng):
    """Sample a stationary Matern type-I hard-core process on ``[0, side]^2``.

    Poisson points are drawn on the window grown by ``d_min`` on each side;
    every point with another point closer than ``d_min`` is removed (mutual
    deletion) and the survivors inside the window are returned. Thinning
    against the margin keeps the expected count free of edge effects.
    """
    lo, hi = -d_min, side + d_min
    n = rng.poisson(intensity * (hi - lo) ** 2)
    pts = rng.uniform(lo, hi, size=(n, 2))
    if n >= 2 and d_min > 0:
        diff = pts[:, None, :] - pts[None, :, :]
        dist2 = np.einsum("ijk,ijk->ij", diff, diff)
        np.fill_diagonal(dist2, np.inf)
        pts = pts[dist2.min(axis=1) >= d_min * d_min]
    inside = np.all((pts >= 0.0) & (pts <= side), axis=1)
    return pts[inside]


def deploy_tsbss(cfg: ScenarioConfig, rng: np.random.Generator) -> list[Tsbs]:
    pts = matern_type1(cfg.delta, cfg.d_min, cfg.area_side, rng)
    demands = rng.choice(np.asarray(cfg.demand_menu), size=len(pts))
    return [Tsbs(i, (float(p[0]), float(p[1])), float(r)) for i, (p, r) in enumerate(zip(pts, demands))]


def init_uavs(cfg: ScenarioConfig, rng: np.random.Generator) -> list[ChildUav]:
    xy = rng.uniform(0.0, cfg.area_side, size=(cfg.num_uavs, 2))
    h = rng.uniform(cfg.h_min, cfg.h_max, size=cfg.num_uavs)
    return [ChildUav(j, (float(xy[j, 0]), float(xy[j, 1]), float(h[j]))) for j in range(cfg.num_uavs)]


def tsbs_arrays(tsbss) -> tuple[np.ndarray, np.ndarray]:
    """Stack TSBSs into ``(T, 2)`` positions and ``(T,)`` demands."""
    if len(tsbss) == 0:
        return np.zeros((0, 2)), np.zeros(0)
    pos = np.array([t.pos for t in tsbss], dtype=float)
    demand = np.array([t.demand for t in tsbss], dtype=float)
    return pos, demand


def uav_array(uavs) -> np.ndarray:
    if isinstance(uavs, np.ndarray):
        return np.asarray(uavs, dtype=float).reshape(-1, 3)
    return np.array([u.pos for u in uavs], dtype=float).reshape(-1, 3)


def uavs_from_array(pos: np.ndarray) -> list[ChildUav]:
    pos = np.asarray(pos, dtype=float).reshape(-1, 3)
    return [ChildUav(j, tuple(float(v) for v in p)) for j, p in enumerate(pos)]
