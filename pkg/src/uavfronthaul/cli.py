"""``simulate`` command line entry point."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import METHODS, SWEEP_VARIABLES, SweepSpec, run_sweep, write_rows_csv, write_rows_json
from .scenario import ScenarioConfig, load_config

FAST_RUNS = 100


def parse_sweep(text: str) -> tuple[str, tuple[float, ...]]:
    name, _, raw = text.partition("=")
    if name not in SWEEP_VARIABLES or not raw:
        raise argparse.ArgumentTypeError(f"expected VAR=v1,v2,... with VAR in {SWEEP_VARIABLES}")
    try:
        values = tuple(float(v) for v in raw.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return name, values


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simulate", description="GA vs k-means UAV fronthaul placement experiments.")
    p.add_argument("--config", type=Path, help="flat key: value YAML file (defaults when omitted)")
    p.add_argument("--seed", type=int, help="root seed, overrides the config file")
    p.add_argument("--runs", type=int, default=1000, help="Monte Carlo realizations (default 1000)")
    p.add_argument("--fast", action="store_true", help=f"shorthand for --runs {FAST_RUNS}")
    p.add_argument("--method", choices=METHODS + ("both",), default="both")
    p.add_argument("--sweep", type=parse_sweep, metavar="VAR=v1,v2,...")
    p.add_argument("--reoptimize", action="store_true", help="rerun placement at every sweep value")
    p.add_argument("--out", type=Path, help="results file (.csv or .json); stdout CSV when omitted")
    p.add_argument("--trace", type=Path, help="write the GA convergence history of realization 0")
    p.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    if args.seed is not None:
        cfg = cfg.replace(seed=args.seed)
    variable, values = args.sweep if args.sweep else (None, ())
    spec = SweepSpec(
        variable=variable,
        values=values,
        methods=METHODS if args.method == "both" else (args.method,),
        runs=FAST_RUNS if args.fast else args.runs,
        reoptimize=args.reoptimize,
    )
    result = run_sweep(cfg, spec, workers=args.workers)

    if args.out is None:
        write_rows_csv(result.rows, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            (write_rows_json if args.out.suffix == ".json" else write_rows_csv)(result.rows, fh)
    if args.trace is not None:
        if result.trace is None:
            print("no GA run to trace (method=kmeans)", file=sys.stderr)
        else:
            with open(args.trace, "w", newline="") as fh:
                result.trace.write_history_csv(fh)
    return 0


if __name__ == "__main__":
    sys.exit(main())
