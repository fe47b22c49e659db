#!/usr/bin/env python3
"""
Command line entry point for the signal optimization experiments.

Verbs:
  build-city      Generate a city network and write its JSON and summary tables
  run             Run every configured algorithm x repetition and write all artifacts
  merge-fronts    Merge exported front files into one global non-dominated table
  export-heatmap  Write a per-intersection mean delay heatmap CSV
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

import numpy as np

from experiment import (
    BASELINE_LAMBDA,
    contribution_summary,
    default_layout,
    export_heatmap,
    export_network_summary,
    heatmap_cells,
    merge_global_front,
    read_front,
    repetition_evaluation_seed,
    run_experiment,
    write_front_csv,
)
from experiment_config import ENV_CONFIG_FILE, ENV_OUT_DIR, ENV_SEED, ExperimentConfig, load_experiment_config
from moea import generation_seed
from objectives import Evaluator, MemoryBuffer
from traffic_network import ConfigurationError, build_city

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


def _load(args) -> ExperimentConfig:
    return load_experiment_config(args.config, seed=args.seed, out_dir=args.out)


def cmd_build_city(args) -> int:
    config = _load(args)
    city = config.resolve_city()
    network = build_city(city)
    directory = os.path.join(config.out_dir, "network")
    paths = export_network_summary(network, None, directory)
    print(f"✅ Built {city.label}: {len(network)} intersections, {len(network.edges)} edges")
    for path in paths:
        print(f"   {path}")
    return EXIT_OK


def cmd_run(args) -> int:
    config = _load(args)
    print(f"Running {', '.join(config.algorithms)} on {config.resolve_city().label} "
          f"({config.repetitions} repetition(s), seed {config.seed})")
    manifest = run_experiment(config)
    print(f"✅ Wrote {len(manifest['artifacts'])} artifacts to {config.out_dir}")
    print(f"   Manifest: {os.path.join(config.out_dir, 'manifest.json')}")
    return EXIT_OK


def cmd_merge_fronts(args) -> int:
    runs = []
    for path in args.fronts:
        records = read_front(path)
        for record in records:
            runs.append((record.algorithm, [record]))
    merged = merge_global_front(runs, args.order)
    out_path = args.out or "global_front.csv"
    directory = os.path.dirname(out_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    write_front_csv(merged, out_path)
    print(f"✅ Merged {len(runs)} records from {len(args.fronts)} file(s) into {len(merged)} global records")
    print(f"   Contributions: {json.dumps(contribution_summary(merged))}")
    print(f"   Output: {out_path}")
    return EXIT_OK


def cmd_export_heatmap(args) -> int:
    config = load_experiment_config(args.config, seed=args.seed)
    city = config.resolve_city()
    network = build_city(city)
    layout = tuple(args.layout) if args.layout else (config.heatmap_layout or default_layout(city, network))
    cells = heatmap_cells(network, layout, city.archetype)

    if args.front:
        records = read_front(args.front)
        if not records:
            raise ValueError(f"Front file {args.front} is empty")
        record = records[args.index]
        if len(record.lam) != len(network):
            raise ValueError(f"Front lambda vectors have {len(record.lam)} entries, network has {len(network)}")
        lam = np.array(record.lam)
        label = f"{record.algorithm} record {args.index}"
    else:
        lam = np.full(len(network), BASELINE_LAMBDA)
        label = f"uniform lambda {BASELINE_LAMBDA}"

    evaluator = Evaluator(network, config.demand_profile(city), config.ahmoa.n_e, config.ahmoa.robustness_mode)
    seed = generation_seed(repetition_evaluation_seed(config.seed, args.repetition), 0)
    context, _ = evaluator.snapshot(MemoryBuffer(config.ahmoa.memory_depth), seed)
    out_path = args.out or "heatmap.csv"
    frame = export_heatmap(context.delay_matrix(lam)[:cells], layout, out_path)
    print(f"✅ Heatmap for {label}: {len(frame)} cells in a {layout[0]}x{layout[1]} layout")
    print(f"   Mean delay {frame['mean_delay_seconds'].mean():.2f} s -> {out_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ahmoa",
        description="Robust multi-objective traffic signal optimization experiments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples:
  ahmoa build-city --config experiment.yaml --out results
  ahmoa run --config experiment.yaml --seed 7 --out results
  ahmoa merge-fronts results/runs/*/front.csv --out results/merged.csv
  ahmoa export-heatmap --config experiment.yaml --front results/runs/ahmoa_rep0/front.json

Environment Variables:
  {ENV_CONFIG_FILE}    Default config file when --config is omitted
  {ENV_SEED}           Master seed override
  {ENV_OUT_DIR}        Output directory override
        """
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable debug logging')
    subparsers = parser.add_subparsers(dest='command', required=True)

    def common(sub):
        sub.add_argument('--config', '-c', help='Path to experiment config (JSON or YAML)')
        sub.add_argument('--seed', type=int, help='Master seed override')
        sub.add_argument('--out', '-o', help='Output directory (or file for merge-fronts/export-heatmap)')

    build = subparsers.add_parser('build-city', help='Generate the configured city network')
    common(build)
    build.set_defaults(handler=cmd_build_city)

    run = subparsers.add_parser('run', help='Run the configured experiment')
    common(run)
    run.set_defaults(handler=cmd_run)

    merge = subparsers.add_parser('merge-fronts', help='Merge front CSV/JSON files')
    common(merge)
    merge.add_argument('fronts', nargs='+', help='Front files written by the run verb')
    merge.add_argument('--order', choices=['f1', 'algorithm'], default='f1', help='Ordering of the merged table')
    merge.set_defaults(handler=cmd_merge_fronts)

    heatmap = subparsers.add_parser('export-heatmap', help='Export a mean-delay heatmap CSV')
    common(heatmap)
    heatmap.add_argument('--front', help='Front JSON with lambda vectors (default: uniform baseline)')
    heatmap.add_argument('--index', type=int, default=0, help='Record of the front to render')
    heatmap.add_argument('--repetition', type=int, default=0, help='Repetition whose volume draws are used')
    heatmap.add_argument('--layout', type=int, nargs=2, metavar=('ROWS', 'COLS'), help='Heatmap grid layout')
    heatmap.set_defaults(handler=cmd_export_heatmap)
    return parser


def cli(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s - %(levelname)s - %(message)s')
    try:
        return args.handler(args)
    except ConfigurationError as e:
        print(f"❌ Configuration error: {e}")
        return EXIT_CONFIG
    except (ValueError, OSError) as e:
        print(f"❌ Error: {e}")
        return EXIT_RUNTIME


def main():
    sys.exit(cli())


if __name__ == "__main__":
    main()
