# Command-line entry point. Exit codes: 0 success, 1 usage/config error,
# 2 runtime/I/O error.

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .config import ConfigError, ScenarioConfig, load_config
from .scenario import run_scenario, run_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ugsim",
        description="Frame-based UGS uplink simulator: fixed-rate baseline "
                    "vs QoE-driven rate adaptation.",
    )
    parser.add_argument("--config", metavar="PATH",
                        help="scenario config file (omit for defaults)")
    parser.add_argument("--scheduler", choices=["baseline", "qoe"],
                        help="override the scheduler for a single run")
    parser.add_argument("--threshold", type=float, metavar="PCT",
                        help="loss threshold percent for a single qoe run")
    parser.add_argument("--sweep", action="store_true",
                        help="run baseline plus one qoe run per configured threshold")
    parser.add_argument("--out", metavar="DIR", default="out",
                        help="output directory for CSV files (default: out)")
    parser.add_argument("--epoch", type=float, metavar="SECONDS",
                        help="override the controller epoch length")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else ScenarioConfig()
        if args.scheduler:
            config.scheduler = args.scheduler
        if args.epoch is not None:
            config.epoch = args.epoch
        threshold = None
        if args.threshold is not None:
            threshold = args.threshold / 100.0
            config.thresholds = [threshold]
        config.validate()
    except ConfigError as exc:
        print(f"ugsim: {exc}", file=sys.stderr)
        return 1

    try:
        if args.sweep:
            results = run_sweep(config, args.out)
            for r in results:
                agg_gen = sum(m.generated for m in r.summary)
                agg_drop = sum(m.dropped for m in r.summary)
                loss = agg_drop / agg_gen if agg_gen else 0.0
                print(f"{r.variant}: aggregate loss_rate {loss:.4f}")
            print(f"wrote {args.out}/sweep_summary.csv and {args.out}/sweep_series.csv")
        else:
            r = run_scenario(config, args.out, threshold=threshold)
            for m in r.summary:
                print(f"{r.variant} flow {m.flow_id}: throughput {m.throughput:.0f} B/s, "
                      f"loss {m.loss_rate:.4f}, delay {m.mean_delay_s * 1e3:.3f} ms, "
                      f"jitter {m.mean_jitter_s * 1e3:.3f} ms")
            print(f"wrote {args.out}/summary.csv and {args.out}/series.csv")
    except OSError as exc:
        print(f"ugsim: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
