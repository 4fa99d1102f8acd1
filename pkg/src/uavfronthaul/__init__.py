"""Joint 3D placement of UAV fronthaul hubs and association of small cells.

Modules
-------
scenario     configuration, Matern type-I TSBS deployment, UAV initialisation
channel      air-to-ground path loss, Nakagami fading, optimal power, SINR
association  max-SINR selection, greedy admission, backhaul enforcement
metrics      sum-rate, association fraction, bandwidth and energy efficiency
ga           mutation-only genetic algorithm for UAV positions
kmeans       Lloyd-centroid baseline placement
oracle       brute-force references and an independent constraint checker
harness      seeded Monte Carlo sweeps and CSV output (``simulate`` CLI)
"""
from .association import AssociationMatrix, associate, enforce_backhaul, greedy_admit, select_best_uav
from .channel import FadingDraw, LinkTable, build_link_table, compute_link_table, sample_fading
from .ga import Chromosome, GaResult, Landscape
from .metrics import EvalReport, energy_efficiency, report
from .scenario import ChildUav, GaConfig, ScenarioConfig, Tsbs, average_tsbs_count, deploy_tsbss, init_uavs

__version__ = "0.1.0"
