"""Command-line interface.

Subcommands: generate, run, reproduce-fig, analyze, theory. Exit codes:
0 success, 2 configuration error, 3 numerical error, 4 I/O error.
The NETUNFOLD_OUTPUT_DIR environment variable supplies the default output
directory when --out is omitted.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import io as nio
from .ensembles import EnsembleSpec, export_edge_list, generate_member
from .errors import (
    ConfigError,
    EdgeListParseError,
    EmptyNetworkError,
    InvalidParameterError,
    NetUnfoldError,
)
from .pipeline import (
    DEFAULT_FIGURE_SEED,
    ExperimentConfig,
    analyze_file,
    config_from_dict,
    config_to_dict,
    parse_config_file,
    reproduce_figure,
    run_experiment,
)
from .theory import THEORY_KINDS, theory_curve

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _default_outdir() -> str:
    return os.environ.get("NETUNFOLD_OUTPUT_DIR", "results")


def _parse_blocks(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"bad block list {text!r}") from exc


def _parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, step = (float(tok) for tok in text.split(":"))
    except ValueError as exc:
        raise ConfigError(f"grid must be lo:hi:step, got {text!r}") from exc
    if step <= 0 or hi < lo:
        raise ConfigError(f"bad grid {text!r}")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netunfold",
        description="Spectral fluctuation statistics of network adjacency ensembles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate an ensemble as edge-list files")
    gen.add_argument("--n", type=int, required=True, help="node count")
    gen.add_argument("--p", type=float, required=True, help="connection probability")
    gen.add_argument("--count", type=int, default=1, help="ensemble size")
    gen.add_argument("--blocks", type=str, default="", help="comma-separated block sizes")
    gen.add_argument("--q", type=float, default=0.0, help="inter-block probability")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", type=str, default=None)

    run = sub.add_parser("run", help="run an experiment from a config file")
    run.add_argument("--config", type=str, required=True, help="key = value config file")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument("--out", type=str, default=None, help="override the output directory")
    run.add_argument("--prefix", type=str, default=None, help="override the file prefix")
    run.add_argument("--parallelism", type=int, default=1)

    fig = sub.add_parser("reproduce-fig", help="run a canned figure experiment")
    fig.add_argument("which", type=int, choices=(1, 2, 3))
    fig.add_argument("--seed", type=int, default=DEFAULT_FIGURE_SEED)
    fig.add_argument("--out", type=str, default=None)
    fig.add_argument("--parallelism", type=int, default=1)

    ana = sub.add_parser("analyze", help="single-network pipeline from an edge list")
    ana.add_argument("edge_list", type=str)
    ana.add_argument("--methods", type=str, default="poly3",
                     help="comma-separated polyN methods")
    ana.add_argument("--drop-top", type=int, default=1)
    ana.add_argument("--edge-fraction", type=float, default=0.02)
    ana.add_argument("--seed", type=int, default=0)
    ana.add_argument("--out", type=str, default=None)
    ana.add_argument("--l-grid", type=str, default="0.5:50:0.5")

    theo = sub.add_parser("theory", help="sample a reference curve to CSV")
    theo.add_argument("curve", type=str, choices=THEORY_KINDS)
    theo.add_argument("--grid", type=str, required=True, help="lo:hi:step")
    theo.add_argument("--out", type=str, default=None,
                      help="output CSV path (default <curve>.csv in the output dir)")
    theo.add_argument("--n", type=float, default=None, help="level count (semicircle)")
    theo.add_argument("--radius", type=float, default=None, help="bulk radius (semicircle)")
    return parser


def _cmd_generate(args) -> int:
    outdir = Path(args.out or _default_outdir())
    outdir.mkdir(parents=True, exist_ok=True)
    blocks = _parse_blocks(args.blocks)
    spec = EnsembleSpec(
        count=args.count, n=args.n, p_intra=args.p, q_inter=args.q,
        block_sizes=blocks, seed=args.seed,
    )
    manifest = {
        "files": {},
        "ensemble": {
            "count": spec.count, "n": spec.n, "p_intra": spec.p_intra,
            "q_inter": spec.q_inter, "block_sizes": list(spec.block_sizes),
            "seed": spec.seed,
        },
    }
    for i in range(spec.count):
        matrix = generate_member(spec, i)
        name = f"member_{i:03d}.edges"
        with open(outdir / name, "w", encoding="utf-8", newline="\n") as fh:
            edges = export_edge_list(matrix, fh)
        manifest["files"][name] = {
            "sha256": nio.sha256_of_file(outdir / name), "edges": edges,
        }
    nio.write_json(manifest, outdir / "generate_manifest.json")
    print(f"wrote {spec.count} edge list(s) to {outdir}")
    return EXIT_OK


def _cmd_run(args) -> int:
    config = parse_config_file(args.config)
    data = config_to_dict(config)
    if args.seed is not None:
        data["ensemble"]["seed"] = args.seed
    if args.out is not None:
        data["output"]["dir"] = args.out
    if args.prefix is not None:
        data["output"]["prefix"] = args.prefix
    config = config_from_dict(data)
    if args.parallelism != 1:
        config = ExperimentConfig(
            **{**_config_kwargs(config), "parallelism": args.parallelism}
        )
    bundle = run_experiment(config)
    print(f"wrote {len(bundle.files)} file(s) to {bundle.output_dir}")
    return EXIT_OK


def _config_kwargs(config: ExperimentConfig) -> dict:
    return {
        name: getattr(config, name)
        for name in (
            "ensemble", "methods", "include_constant", "drop_top", "edge_fraction",
            "density", "nnsd", "sigma2", "delta3", "density_bins", "nnsd_bin_width",
            "l_min", "l_max", "l_step", "window_samples", "output_dir", "prefix",
            "parallelism",
        )
    }


def _cmd_reproduce(args) -> int:
    outdir = args.out or _default_outdir()
    bundle = reproduce_figure(
        args.which, seed=args.seed, output_dir=outdir, parallelism=args.parallelism
    )
    print(f"wrote {len(bundle.files)} file(s) to {bundle.output_dir}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    grid = _parse_grid(args.l_grid)
    methods = tuple(tok.strip() for tok in args.methods.split(",") if tok.strip())
    bundle = analyze_file(
        args.edge_list,
        output_dir=args.out or _default_outdir(),
        methods=methods,
        drop_top=args.drop_top,
        edge_fraction=args.edge_fraction,
        seed=args.seed,
        l_min=float(grid[0]),
        l_max=float(grid[-1]),
        l_step=float(grid[1] - grid[0]) if grid.size > 1 else 0.5,
    )
    print(f"wrote {len(bundle.files)} file(s) to {bundle.output_dir}")
    return EXIT_OK


def _cmd_theory(args) -> int:
    grid = _parse_grid(args.grid)
    curve = theory_curve(args.curve, grid, n=args.n, radius=args.radius)
    out = Path(args.out) if args.out else Path(_default_outdir()) / f"{args.curve}.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    nio.write_statcurve_csv(curve, out)
    print(f"wrote {out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "run": _cmd_run,
        "reproduce-fig": _cmd_reproduce,
        "analyze": _cmd_analyze,
        "theory": _cmd_theory,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EdgeListParseError, EmptyNetworkError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NetUnfoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
