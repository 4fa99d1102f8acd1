"""Brute-force references for small instances.

Nothing here calls into :mod:`uavfronthaul.association`; the step-by-step
trace and the constraint checker are written again from scratch with plain
Python loops so that they can be compared against the vectorised pipeline.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .scenario import ScenarioConfig

MAX_TSBS = 12
MAX_UAVS = 3
MAX_GRID = 10_000
REL_TOL = 1e-9
SPEED_OF_LIGHT = 299_792_458.0


def _pair_ok(table, cfg, i, j) -> bool:
    """Power box, interference threshold and SINR floor for one pair."""
    if not table.feasible[i, j]:
        return False
    omega = table.omega[i, j]
    if not (cfg.psi_min <= omega <= cfg.psi_max):
        return False
    if table.g_lin[i, j] * omega > cfg.i_th * (1 + REL_TOL):
        return False
    return table.sinr_lin[i, j] >= cfg.sinr_min


def exhaustive_association(link_table, cfg: ScenarioConfig):
    """Best constrained assignment by depth-first enumeration.

    Returns ``(a, F_s)``. Among equal sum-rates the row-major
    lexicographically smallest matrix wins.
    """
    num_tsbs, num_uavs = link_table.num_tsbs, link_table.num_uavs
    if num_tsbs > MAX_TSBS or num_uavs > MAX_UAVS:
        raise ValueError(f"instance too large for enumeration ({num_tsbs}x{num_uavs})")
    demand = [float(r) for r in link_table.demand]
    allowed = [[_pair_ok(link_table, cfg, i, j) for j in range(num_uavs)] for i in range(num_tsbs)]
    suffix = [0.0] * (num_tsbs + 1)
    for i in range(num_tsbs - 1, -1, -1):
        suffix[i] = suffix[i + 1] + demand[i]

    best = {"rate": -1.0, "choice": None}
    choice = [-1] * num_tsbs
    bw = [0.0] * num_uavs
    links = [0] * num_uavs

    def dfs(i, rate):
        if rate + suffix[i] <= best["rate"]:
            return
        if i == num_tsbs:
            best["rate"], best["choice"] = rate, list(choice)
            return
        # row-major lexicographic order: empty row, then UAV U-1 ... 0
        for j in [-1] + list(range(num_uavs - 1, -1, -1)):
            if j < 0:
                choice[i] = -1
                dfs(i + 1, rate)
                continue
            if not allowed[i][j] or links[j] + 1 > cfg.link_cap:
                continue
            b = link_table.b_req[i, j]
            if bw[j] + b > cfg.bandwidth_cap or rate + demand[i] > cfg.backhaul_cap:
                continue
            choice[i] = j
            bw[j] += b
            links[j] += 1
            dfs(i + 1, rate + demand[i])
            bw[j] -= b
            links[j] -= 1
        choice[i] = -1

    dfs(0, 0.0)
    a = np.zeros((num_tsbs, num_uavs), dtype=np.int8)
    for i, j in enumerate(best["choice"] or []):
        if j >= 0:
            a[i, j] = 1
    return a, max(best["rate"], 0.0)


def trace_association(link_table, cfg: ScenarioConfig):
    """Literal walk through the max-SINR / admission / backhaul passes.

    Spectral efficiency is taken as demand over required bandwidth. Returns
    ``(a, F_s)`` as nested lists turned into an array.
    """
    num_tsbs, num_uavs = link_table.num_tsbs, link_table.num_uavs
    sinr = link_table.sinr_lin.tolist()
    feas = link_table.feasible.tolist()
    b = link_table.b_req.tolist()
    r = [float(x) for x in link_table.demand]
    a = [[0] * num_uavs for _ in range(num_tsbs)]

    # TSBS side: feedback 1 to the strongest UAV if it clears the floor
    request = [-1] * num_tsbs
    for i in range(num_tsbs):
        best_j, best_s = -1, -math.inf
        for j in range(num_uavs):
            if feas[i][j] and sinr[i][j] > best_s:
                best_j, best_s = j, sinr[i][j]
        if best_j >= 0 and best_s >= cfg.sinr_min:
            request[i] = best_j
            a[i][best_j] = 1

    # UAV side: serve the most spectrally efficient request first
    for j in range(num_uavs):
        pending = [i for i in range(num_tsbs) if request[i] == j]
        c_links, c_bw = 0, 0.0
        while c_links < cfg.link_cap and c_bw < cfg.bandwidth_cap and pending:
            pick = pending[0]
            for i in pending[1:]:
                if r[i] / b[i][j] > r[pick] / b[pick][j]:
                    pick = i
            pending.remove(pick)
            if c_bw + b[pick][j] <= cfg.bandwidth_cap:
                c_links += 1
                c_bw += b[pick][j]
            else:
                a[pick][j] = 0
        for i in pending:
            a[i][j] = 0

    # parent-UAV: trim until the backhaul carries the total
    f_s = sum(r[i] * a[i][j] for i in range(num_tsbs) for j in range(num_uavs))
    while f_s > cfg.backhaul_cap:
        loads = [sum(a[i][j] for i in range(num_tsbs)) for j in range(num_uavs)]
        top = 0
        for j in range(1, num_uavs):
            if loads[j] > loads[top]:
                top = j
        drop = -1
        for i in range(num_tsbs):
            if a[i][top] and (drop < 0 or r[i] < r[drop]):
                drop = i
        a[drop][top] = 0
        f_s -= r[drop]
    return np.array(a, dtype=np.int8).reshape(num_tsbs, num_uavs), f_s


def _pair_gain(q, z, g_los, g_nlos, cfg):
    d = math.hypot(q[0] - z[0], q[1] - z[1])
    h = z[2]
    theta = math.degrees(math.atan2(h, d))
    p = 1.0 / (1.0 + cfg.alpha * math.exp(-cfg.beta * (theta - cfg.alpha)))
    loss = 10 * cfg.gamma * math.log10(4 * math.pi * math.sqrt(d * d + h * h) * cfg.f_carrier / SPEED_OF_LIGHT)
    loss += p * cfg.xi_los + (1 - p) * cfg.xi_nlos
    fade = p * 10 * math.log10(g_los) + (1 - p) * 10 * math.log10(g_nlos)
    return 10 ** ((fade - loss) / 10)


def check_constraints(a, tsbs_pos, demand, uav_pos, fading, cfg: ScenarioConfig) -> list[str]:
    """Recompute every link from raw positions and fading gains and list violations.

    An empty list means the matrix satisfies bandwidth, link count, power
    box, interference threshold, altitude, SINR floor, single attachment
    and backhaul rate.
    """
    a = np.asarray(a).tolist()
    tsbs_pos = np.asarray(tsbs_pos, dtype=float).reshape(-1, 2).tolist()
    uav_pos = np.asarray(uav_pos, dtype=float).reshape(-1, 3).tolist()
    demand = [float(x) for x in demand]
    num_tsbs, num_uavs = len(tsbs_pos), len(uav_pos)
    problems = []

    g = [[_pair_gain(tsbs_pos[i], uav_pos[j], float(fading.g_los[i, j]), float(fading.g_nlos[i, j]), cfg)
          for j in range(num_uavs)] for i in range(num_tsbs)]
    omega = [[min(cfg.psi_max, cfg.i_th / g[i][j]) for j in range(num_uavs)] for i in range(num_tsbs)]
    if cfg.power_mode == "broadcast" and num_tsbs:
        per_uav = [min(omega[i][j] for i in range(num_tsbs)) for j in range(num_uavs)]
        omega = [[per_uav[j] for j in range(num_uavs)] for _ in range(num_tsbs)]
    on = [[omega[i][j] >= cfg.psi_min for j in range(num_uavs)] for i in range(num_tsbs)]
    rx = [[omega[i][j] * g[i][j] if on[i][j] else 0.0 for j in range(num_uavs)] for i in range(num_tsbs)]

    for j, (x, y, h) in enumerate(uav_pos):
        if not (cfg.h_min <= h <= cfg.h_max):
            problems.append(f"height: UAV {j} at {h}")
        if not (0 <= x <= cfg.area_side and 0 <= y <= cfg.area_side):
            problems.append(f"area: UAV {j} at ({x}, {y})")

    total_rate = 0.0
    for i in range(num_tsbs):
        if sum(a[i]) > 1:
            problems.append(f"single connection: TSBS {i} row sum {sum(a[i])}")
    for j in range(num_uavs):
        used_bw, used_links = 0.0, 0
        for i in range(num_tsbs):
            if not a[i][j]:
                continue
            used_links += 1
            total_rate += demand[i]
            if not on[i][j] or not (cfg.psi_min <= omega[i][j] <= cfg.psi_max):
                problems.append(f"power: pair ({i}, {j}) omega {omega[i][j]}")
                continue
            if g[i][j] * omega[i][j] > cfg.i_th * (1 + REL_TOL):
                problems.append(f"interference: pair ({i}, {j})")
            interference = sum(rx[i][k] for k in range(num_uavs) if k != j)
            s = rx[i][j] / (cfg.noise_w + interference)
            if s < cfg.sinr_min * (1 - REL_TOL):
                problems.append(f"sinr: pair ({i}, {j}) {s}")
            used_bw += demand[i] / math.log2(1 + s) if s > 0 else math.inf
        if used_links > cfg.link_cap:
            problems.append(f"links: UAV {j} serves {used_links}")
        if used_bw > cfg.bandwidth_cap * (1 + REL_TOL):
            problems.append(f"bandwidth: UAV {j} uses {used_bw}")
    if total_rate > cfg.backhaul_cap * (1 + REL_TOL):
        problems.append(f"backhaul: total {total_rate}")
    return problems


def grid_axes(cfg: ScenarioConfig, grid_spec=(5, 5, 3)):
    """Cell-centred ``x``/``y`` samples and end-inclusive heights."""
    nx, ny, nh = grid_spec
    xs = (np.arange(nx) + 0.5) * cfg.area_side / nx
    ys = (np.arange(ny) + 0.5) * cfg.area_side / ny
    hs = np.linspace(cfg.h_min, cfg.h_max, nh) if nh > 1 else np.array([0.5 * (cfg.h_min + cfg.h_max)])
    return xs, ys, hs


def grid_search_positions(landscape, cfg: ScenarioConfig, grid_spec=(5, 5, 3), batch: int = 500):
    """Exhaustive sum-rate maximisation over a Cartesian grid of UAV positions.

    Returns ``(positions (U, 3), F_s)``; the first best grid tuple wins.
    """
    if cfg.num_uavs > 2:
        raise ValueError("grid search supports at most 2 UAVs")
    xs, ys, hs = grid_axes(cfg, grid_spec)
    cells = np.array(list(itertools.product(xs, ys, hs)))
    n_total = len(cells) ** cfg.num_uavs
    if n_total > MAX_GRID:
        raise ValueError(f"grid has {n_total} candidate tuples (limit {MAX_GRID})")
    combos = np.array(list(itertools.product(range(len(cells)), repeat=cfg.num_uavs)))
    best_f, best_k = -1.0, 0
    for start in range(0, len(combos), batch):
        genes = cells[combos[start:start + batch]].reshape(-1, 3 * cfg.num_uavs)
        fit = landscape.fitness(genes)
        k = int(np.argmax(fit))
        if fit[k] > best_f:
            best_f, best_k = float(fit[k]), start + k
    return cells[combos[best_k]].copy(), best_f
