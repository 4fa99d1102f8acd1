"""Air-to-ground channel: geometry, LoS probability, path loss, fading, SINR.

Every array routine broadcasts over leading axes, so a whole GA population
of UAV layouts ``(S, U, 3)`` produces link arrays of shape ``(S, T, U)`` in
one call.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .scenario import ScenarioConfig, tsbs_arrays, uav_array

SPEED_OF_LIGHT = 299_792_458.0


def db_to_lin(x):
    return np.power(10.0, np.asarray(x, dtype=float) / 10.0)


def lin_to_db(x):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(x, dtype=float))


def wavelength(cfg: ScenarioConfig) -> float:
    return SPEED_OF_LIGHT / cfg.f_carrier


def horizontal_distance(tsbs, uav):
    tsbs = np.asarray(tsbs, dtype=float)
    uav = np.asarray(uav, dtype=float)
    return np.hypot(tsbs[..., 0] - uav[..., 0], tsbs[..., 1] - uav[..., 1])


def elevation_angle(d, h):
    """Elevation from ground to UAV in degrees; ``d = 0`` gives 90."""
    h = np.asarray(h, dtype=float)
    if np.any(h <= 0):
        raise ValueError("UAV height must be positive")
    return np.degrees(np.arctan2(h, np.asarray(d, dtype=float)))


def slant_distance(d, h):
    return np.hypot(d, h)


def los_probability(theta, alpha, beta):
    return 1.0 / (1.0 + alpha * np.exp(-beta * (np.asarray(theta, dtype=float) - alpha)))


def free_space_loss_db(s, cfg: ScenarioConfig):
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0):
        raise ValueError("slant distance must be positive")
    return 10.0 * cfg.gamma * np.log10(4.0 * np.pi * s / wavelength(cfg))


def path_loss_db(s, p_los, cfg: ScenarioConfig):
    """Mean ATG loss: free-space term plus LoS/NLoS excess weighted by ``p_los``."""
    p_los = np.asarray(p_los, dtype=float)
    return free_space_loss_db(s, cfg) + p_los * cfg.xi_los + (1.0 - p_los) * cfg.xi_nlos


@dataclass(frozen=True)
class FadingDraw:
    """Unit-mean Gamma power gains per (TSBS, UAV index), LoS and NLoS branch.

    Drawn once per Monte Carlo realization and reused for every candidate
    UAV layout, so the GA sees a deterministic landscape.
    """

    g_los: np.ndarray
    g_nlos: np.ndarray

    @property
    def shape(self):
        return self.g_los.shape

    def fading_db(self, p_los):
        return p_los * lin_to_db(self.g_los) + (1.0 - p_los) * lin_to_db(self.g_nlos)


def gamma_power_gain(m, size, rng: np.random.Generator):
    """Squared Nakagami-m envelope with unit mean, i.e. Gamma(m, 1/m)."""
    return rng.gamma(m, 1.0 / m, size=size)


def sample_fading(num_tsbs: int, num_uavs: int, cfg: ScenarioConfig, rng: np.random.Generator) -> FadingDraw:
    shape = (num_tsbs, num_uavs)
    g_los = gamma_power_gain(cfg.m_los, shape, rng)
    g_nlos = gamma_power_gain(cfg.m_nlos, shape, rng)
    return FadingDraw(g_los, g_nlos)


def sample_fading_db(p_los, cfg: ScenarioConfig, rng: np.random.Generator):
    """Draw the fading term (dB) for links with LoS probability ``p_los``."""
    p_los = np.asarray(p_los, dtype=float)
    draw = FadingDraw(gamma_power_gain(cfg.m_los, p_los.shape, rng), gamma_power_gain(cfg.m_nlos, p_los.shape, rng))
    return draw.fading_db(p_los)


def optimal_power(g_lin, cfg: ScenarioConfig):
    """Largest power within ``psi_max`` keeping ``g * omega <= i_th``.

    Returns ``(omega, feasible)``; infeasible when the threshold forces the
    power below ``psi_min``.
    """
    g_lin = np.asarray(g_lin, dtype=float)
    omega = np.minimum(cfg.psi_max, cfg.i_th / g_lin)
    return omega, omega >= cfg.psi_min


def sinr(rx_w, noise_w, interference_w):
    return np.asarray(rx_w) / (noise_w + np.asarray(interference_w))


def required_bandwidth(demand, sinr_lin):
    """Bandwidth carrying ``demand`` at Shannon efficiency; inf when SINR is 0."""
    se = np.log2(1.0 + np.asarray(sinr_lin, dtype=float))
    with np.errstate(divide="ignore"):
        return np.where(se > 0, np.asarray(demand, dtype=float) / np.where(se > 0, se, 1.0), np.inf)


@dataclass(frozen=True)
class LinkTable:
    """Per-pair link quantities, arrays of shape ``(..., T, U)``."""

    d: np.ndarray
    theta: np.ndarray
    s: np.ndarray
    p_los: np.ndarray
    gamma_db: np.ndarray
    fading_db: np.ndarray
    g_lin: np.ndarray
    omega: np.ndarray
    rx_w: np.ndarray
    sinr_lin: np.ndarray
    b_req: np.ndarray
    feasible: np.ndarray
    demand: np.ndarray

    @property
    def num_tsbs(self) -> int:
        return self.d.shape[-2]

    @property
    def num_uavs(self) -> int:
        return self.d.shape[-1]

    @property
    def sinr_db(self):
        return lin_to_db(self.sinr_lin)

    def __getitem__(self, k) -> "LinkTable":
        """Select one layout out of a batched table."""
        fields = {name: getattr(self, name)[k] for name in self.__dataclass_fields__ if name != "demand"}
        return LinkTable(demand=self.demand, **fields)


def compute_link_table(tsbs_pos, demand, uav_pos, fading: FadingDraw, cfg: ScenarioConfig) -> LinkTable:
    """Link table for fixed fading gains and one or many UAV layouts.

    ``tsbs_pos`` is ``(T, 2)``, ``demand`` ``(T,)``, ``uav_pos`` ``(..., U, 3)``.
    """
    tsbs_pos = np.asarray(tsbs_pos, dtype=float)
    demand = np.asarray(demand, dtype=float)
    uav_pos = np.asarray(uav_pos, dtype=float)
    q = tsbs_pos[:, None, :]  # (T, 1, 2)
    z = uav_pos[..., None, :, :]  # (..., 1, U, 3)
    d = horizontal_distance(q, z)
    h = np.broadcast_to(z[..., 2], d.shape)
    theta = elevation_angle(d, h)
    s = slant_distance(d, h)
    p_los = los_probability(theta, cfg.alpha, cfg.beta)
    gamma_db = path_loss_db(s, p_los, cfg)
    fad_db = fading.fading_db(p_los)
    g_lin = db_to_lin(fad_db - gamma_db)

    omega, feasible = optimal_power(g_lin, cfg)
    if cfg.power_mode == "broadcast" and omega.shape[-2] > 0:
        omega = np.broadcast_to(omega.min(axis=-2, keepdims=True), omega.shape).copy()
        feasible = omega >= cfg.psi_min

    rx_w = np.where(feasible, db_to_lin(lin_to_db(omega) + fad_db - gamma_db), 0.0)
    total = rx_w.sum(axis=-1, keepdims=True)
    interference = np.maximum(total - rx_w, 0.0)
    sinr_lin = np.where(feasible, sinr(rx_w, cfg.noise_w, interference), 0.0)
    b_req = required_bandwidth(demand[:, None], sinr_lin)
    return LinkTable(d, theta, s, p_los, gamma_db, fad_db, g_lin, omega, rx_w, sinr_lin, b_req, feasible, demand)


def build_link_table(tsbss, uavs, cfg: ScenarioConfig, rng: np.random.Generator) -> tuple[LinkTable, FadingDraw]:
    """Sample fresh fading for every pair and build the link table."""
    pos, demand = tsbs_arrays(tsbss)
    uav_pos = uav_array(uavs)
    if len(pos) == 0 or len(uav_pos) == 0:
        raise ValueError("need at least one TSBS and one UAV")
    fading = sample_fading(len(pos), len(uav_pos), cfg, rng)
    return compute_link_table(pos, demand, uav_pos, fading, cfg), fading


CSV_COLUMNS = ("i", "j", "d", "theta", "s", "p_los", "gamma_db", "fading_db", "omega", "sinr_db", "b_req", "feasible")


def write_link_table_csv(table: LinkTable, fh) -> None:
    if table.d.ndim != 2:
        raise ValueError("select a single layout before dumping")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    sinr_db = table.sinr_db
    for i in range(table.num_tsbs):
        for j in range(table.num_uavs):
            writer.writerow(
                [i, j]
                + [repr(float(v[i, j])) for v in (table.d, table.theta, table.s, table.p_los, table.gamma_db,
                                                    table.fading_db, table.omega, sinr_db, table.b_req)]
                + [int(table.feasible[i, j])]
            )

