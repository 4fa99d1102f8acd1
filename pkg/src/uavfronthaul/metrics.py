"""Evaluation quantities for a solved instance."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .association import AssociationMatrix
from .channel import LinkTable
from .scenario import ScenarioConfig


@dataclass(frozen=True)
class EvalReport:
    sum_rate: float
    assoc_fraction: float
    avg_bandwidth: float
    energy_eff: float
    total_power: float
    unassoc_fraction: float
    num_tsbs: int = 0
    num_associated: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def energy_efficiency(assoc: AssociationMatrix, link_table: LinkTable, cfg: ScenarioConfig) -> tuple[float, float]:
    """Return ``(E_eff, P_total)``; both are 0 for an empty association.

    ``P_total = epsilon * sum(omega * a) + K * rho_c``: the amplifier factor
    scales the radiated power only.
    """
    k = assoc.num_associated
    if k == 0:
        return 0.0, 0.0
    p_total = cfg.epsilon * float(np.sum(link_table.omega * assoc.a)) + k * cfg.rho_c
    return assoc.sum_rate(link_table.demand) / p_total, p_total


def report(assoc: AssociationMatrix, link_table: LinkTable, cfg: ScenarioConfig) -> EvalReport:
    num_tsbs = assoc.a.shape[0]
    k = assoc.num_associated
    e_eff, p_total = energy_efficiency(assoc, link_table, cfg)
    frac = k / num_tsbs if num_tsbs else 0.0
    return EvalReport(
        sum_rate=assoc.sum_rate(link_table.demand),
        assoc_fraction=frac,
        avg_bandwidth=float(np.mean(assoc.bw_used)) if assoc.bw_used.size else 0.0,
        energy_eff=e_eff,
        total_power=p_total,
        # an empty network reports zeros everywhere
        unassoc_fraction=1.0 - frac if num_tsbs else 0.0,
        num_tsbs=num_tsbs,
        num_associated=k,
    )
