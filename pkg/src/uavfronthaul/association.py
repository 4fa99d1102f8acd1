"""TSBS-to-UAV association: max-SINR choice, greedy admission, backhaul cap.

The pipeline is a heuristic in three passes. Each TSBS names the UAV it hears
best; each UAV admits its requesters in order of spectral efficiency while
its bandwidth and link budgets last; the parent-UAV then drops the smallest
demands from the busiest UAVs until the total fits the backhaul rate.
All ties resolve to the lowest index.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .channel import LinkTable
from .scenario import ScenarioConfig

NO_UAV = -1


@dataclass
class AssociationMatrix:
    """Binary ``(T, U)`` attachment matrix with per-UAV load counters."""

    a: np.ndarray
    links_used: np.ndarray
    bw_used: np.ndarray

    @classmethod
    def empty(cls, num_tsbs: int, num_uavs: int) -> "AssociationMatrix":
        return cls(np.zeros((num_tsbs, num_uavs), dtype=np.int8), np.zeros(num_uavs, dtype=int), np.zeros(num_uavs))

    def copy(self) -> "AssociationMatrix":
        return AssociationMatrix(self.a.copy(), self.links_used.copy(), self.bw_used.copy())

    @property
    def serving(self) -> np.ndarray:
        """UAV index serving each TSBS, ``NO_UAV`` when unattached."""
        out = np.full(self.a.shape[0], NO_UAV)
        rows, cols = np.nonzero(self.a)
        out[rows] = cols
        return out

    @property
    def num_associated(self) -> int:
        return int(self.a.sum())

    def sum_rate(self, demand) -> float:
        return float(np.dot(self.a.sum(axis=1), demand))

    def write_csv(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["tsbs"] + [f"uav{j}" for j in range(self.a.shape[1])])
        for i, row in enumerate(self.a):
            writer.writerow([i] + [int(v) for v in row])


def select_best_uav(link_table: LinkTable, cfg: ScenarioConfig) -> np.ndarray:
    """Max-SINR UAV per TSBS, or ``NO_UAV`` when that SINR misses the floor."""
    sinr = np.where(link_table.feasible, link_table.sinr_lin, -np.inf)
    if sinr.shape[-2] == 0:
        return np.zeros(0, dtype=int)
    best = np.argmax(sinr, axis=-1)  # first maximum -> lowest index
    best_sinr = np.take_along_axis(sinr, best[..., None], axis=-1)[..., 0]
    return np.where(best_sinr >= cfg.sinr_min, best, NO_UAV)


def greedy_admit(candidates, link_table: LinkTable, cfg: ScenarioConfig) -> AssociationMatrix:
    candidates = np.asarray(candidates)
    num_tsbs, num_uavs = link_table.num_tsbs, link_table.num_uavs
    assoc = AssociationMatrix.empty(num_tsbs, num_uavs)
    se = np.log2(1.0 + link_table.sinr_lin)
    for j in range(num_uavs):
        mine = np.flatnonzero(candidates == j)
        if mine.size == 0:
            continue
        # descending SE, ascending id on ties
        order = mine[np.lexsort((mine, -se[mine, j]))]
        used_links, used_bw = 0, 0.0
        for i in order:
            if used_links >= cfg.link_cap:
                break
            b = link_table.b_req[i, j]
            if used_bw + b <= cfg.bandwidth_cap:
                assoc.a[i, j] = 1
                used_links += 1
                used_bw += b
        assoc.links_used[j] = used_links
        assoc.bw_used[j] = used_bw
    return assoc


def enforce_backhaul(assoc: AssociationMatrix, link_table: LinkTable, cfg: ScenarioConfig) -> AssociationMatrix:
    """Drop associations until the total served demand fits ``backhaul_cap``."""
    assoc = assoc.copy()
    demand = link_table.demand
    f_s = assoc.sum_rate(demand)
    while f_s > cfg.backhaul_cap:
        j = int(np.argmax(assoc.a.sum(axis=0)))
        members = np.flatnonzero(assoc.a[:, j])
        i = int(members[np.argmin(demand[members])])
        assoc.a[i, j] = 0
        assoc.links_used[j] -= 1
        assoc.bw_used[j] = 0.0 if assoc.links_used[j] == 0 else assoc.bw_used[j] - link_table.b_req[i, j]
        f_s -= demand[i]
    return assoc


def associate(link_table: LinkTable, cfg: ScenarioConfig) -> tuple[AssociationMatrix, float]:
    """Full pipeline on one layout; returns the matrix and its sum-rate."""
    if link_table.num_tsbs == 0:
        return AssociationMatrix.empty(0, link_table.num_uavs), 0.0
    candidates = select_best_uav(link_table, cfg)
    assoc = greedy_admit(candidates, link_table, cfg)
    assoc = enforce_backhaul(assoc, link_table, cfg)
    return assoc, assoc.sum_rate(link_table.demand)
