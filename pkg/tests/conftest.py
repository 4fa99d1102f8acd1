import numpy as np
import pytest

from uavfronthaul.channel import LinkTable, required_bandwidth
from uavfronthaul.scenario import MBPS, MHZ, ScenarioConfig


def synthetic_table(sinr_lin, demand, feasible=None, omega=None, g_lin=None) -> LinkTable:
    """Link table with chosen SINRs; geometry columns are placeholders."""
    sinr_lin = np.asarray(sinr_lin, dtype=float)
    demand = np.asarray(demand, dtype=float)
    if sinr_lin.ndim == 1:
        sinr_lin = sinr_lin[:, None]
    filler = np.ones_like(sinr_lin)
    feasible = np.ones(sinr_lin.shape, bool) if feasible is None else np.asarray(feasible, bool)
    omega = 0.5 * filler if omega is None else np.asarray(omega, float)
    g_lin = 1e-15 * filler if g_lin is None else np.asarray(g_lin, float)
    sinr_lin = np.where(feasible, sinr_lin, 0.0)
    return LinkTable(
        d=filler, theta=filler, s=filler, p_los=filler, gamma_db=filler, fading_db=0 * filler,
        g_lin=g_lin, omega=omega, rx_w=omega * g_lin, sinr_lin=sinr_lin,
        b_req=required_bandwidth(demand[:, None], sinr_lin), feasible=feasible, demand=demand,
    )


@pytest.fixture
def cfg():
    return ScenarioConfig()


@pytest.fixture
def loose_cfg():
    """Caps that never bind."""
    return ScenarioConfig(bandwidth_cap=1e12, link_cap=10**6, backhaul_cap=1e15)





def make_cfg(**changes) -> ScenarioConfig:
    """Default config with overrides; accepts ``ga_``-prefixed keys."""
    return ScenarioConfig().replace(**changes)
