"""
Sum-rate against the bandwidth budget
=====================================

Positions are optimised once at the default budget, then held fixed while
the per-UAV bandwidth cap varies. GA positions saturate early; k-means keeps
asking for more spectrum.
"""
import sys

from uavfronthaul.harness import SweepSpec, run_sweep, write_rows_csv
from uavfronthaul.scenario import ScenarioConfig

runs = int(sys.argv[1]) if len(sys.argv) > 1 else 50
values = tuple(b * 1e6 for b in range(0, 401, 50))
res = run_sweep(ScenarioConfig(), SweepSpec("bandwidth_cap", values, runs=runs))

print(f"{'B (MHz)':>8} {'GA Gbps':>8} {'k-means':>8}")
for k, b in enumerate(values):
    ga_rate = res.series("ga", "sum_rate", k).mean() / 1e9
    km_rate = res.series("kmeans", "sum_rate", k).mean() / 1e9
    print(f"{b / 1e6:8.0f} {ga_rate:8.3f} {km_rate:8.3f}")

# the same table in the harness CSV schema
write_rows_csv(res.rows, sys.stdout)
