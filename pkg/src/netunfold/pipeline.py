"""Experiment orchestration: configs, ensemble runs, figure commands.

A run is fully determined by its configuration: ensemble members are
generated, decomposed and measured independently under derived seeds, then
reduced in member order, so output files are byte-identical for any worker
count. BLAS is pinned to one thread during the fan-out for the same reason.
"""

from __future__ import annotations

import configparser
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from threadpoolctl import threadpool_limits

from . import io as nio
from ._kernels import BACKEND
from .ensembles import EnsembleSpec, generate_member, ingest_edge_list
from .errors import ConfigError, NetUnfoldError, PipelineError
from .rng import mix64
from .spectra import (
    DEFAULT_DENSITY_BINS,
    density_histogram,
    eigenvalues,
    rescale_density,
    trim_spectrum,
)
from .stats import (
    DEFAULT_NNSD_BIN_WIDTH,
    DEFAULT_WINDOW_SAMPLES,
    delta3_curve,
    ensemble_average,
    nnsd,
    sigma2_curve,
    spacings,
)
from .theory import theory_curve
from .unfolding import (
    BlockSemicircle,
    PolynomialFit,
    SemicircleExact,
    UnfoldingMethod,
    semicircle_radius,
    unfold,
)

PACKAGE_VERSION = "0.1.0"

# seed-derivation tags for windowed statistics (documented, fixed)
_TAG_SIGMA2 = 3
_TAG_DELTA3 = 4

_KNOWN_KEYS = {
    "ensemble": {"count", "n", "p_intra", "q_inter", "block_sizes", "seed"},
    "unfolding": {"methods", "include_constant"},
    "trim": {"drop_top", "edge_fraction"},
    "statistics": {
        "density", "nnsd", "sigma2", "delta3", "density_bins",
        "nnsd_bin_width", "l_min", "l_max", "l_step", "window_samples",
    },
    "output": {"dir", "prefix"},
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one ensemble experiment."""

    ensemble: EnsembleSpec
    methods: tuple[str, ...] = ("exact",)
    include_constant: bool = True
    drop_top: int | None = None          # None: one detached level per block
    edge_fraction: float = 0.02
    density: bool = False
    nnsd: bool = True
    sigma2: bool = False
    delta3: bool = True
    density_bins: int = DEFAULT_DENSITY_BINS
    nnsd_bin_width: float = DEFAULT_NNSD_BIN_WIDTH
    l_min: float = 0.5
    l_max: float = 50.0
    l_step: float = 0.5
    window_samples: int = DEFAULT_WINDOW_SAMPLES
    output_dir: Path = Path("results")
    prefix: str = "run"
    parallelism: int = 1

    def __post_init__(self):
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not (self.density or self.nnsd or self.sigma2 or self.delta3):
            raise ConfigError("no statistic enabled")
        if not self.methods:
            raise ConfigError("no unfolding method configured")
        for name in self.methods:
            _parse_method_name(name)
        if self.l_step <= 0 or self.l_max < self.l_min or self.l_min <= 0:
            raise ConfigError(
                f"bad L grid: min={self.l_min} max={self.l_max} step={self.l_step}"
            )
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be >= 1, got {self.parallelism}")

    def effective_drop_top(self) -> int:
        if self.drop_top is not None:
            return self.drop_top
        return len(self.ensemble.block_sizes)

    def l_grid(self) -> np.ndarray:
        count = int(math.floor((self.l_max - self.l_min) / self.l_step + 1e-9)) + 1
        return self.l_min + self.l_step * np.arange(count)


def _parse_method_name(name: str):
    name = name.strip().lower()
    if name == "exact":
        return name
    if name.startswith("poly"):
        try:
            degree = int(name[4:])
        except ValueError:
            raise ConfigError(f"bad polynomial method {name!r}") from None
        if not 1 <= degree <= 9:
            raise ConfigError(f"polynomial degree {degree} outside [1, 9]")
        return name
    raise ConfigError(f"unknown unfolding method {name!r} (use 'exact' or 'polyN')")


def resolve_method(name: str, config: ExperimentConfig) -> UnfoldingMethod:
    """Turn a config method name into a concrete unfolding method.

    'exact' builds the (block-)semicircle cumulative from the ensemble
    parameters, distributing the trimmed detached levels evenly over blocks;
    'polyN' is a degree-N staircase fit performed per spectrum.
    """
    name = _parse_method_name(name)
    if name.startswith("poly"):
        return PolynomialFit(degree=int(name[4:]), include_constant=config.include_constant)
    spec = config.ensemble
    sigma = math.sqrt(spec.p_intra * (1.0 - spec.p_intra))
    if sigma == 0.0:
        raise ConfigError("exact unfolding needs p_intra strictly inside (0, 1)")
    blocks = spec.block_sizes
    drop = config.effective_drop_top()
    base, extra = divmod(drop, len(blocks))
    per_block = [base + (1 if b < extra else 0) for b in range(len(blocks))]
    entries = [
        (size - dropped, semicircle_radius(size, sigma))
        for size, dropped in zip(blocks, per_block)
    ]
    if len(entries) == 1:
        n_eff, radius = entries[0]
        return SemicircleExact(n_eff=n_eff, radius=radius)
    return BlockSemicircle(blocks=tuple(entries))


def config_to_dict(config: ExperimentConfig) -> dict:
    spec = config.ensemble
    return {
        "ensemble": {
            "count": spec.count,
            "n": spec.n,
            "p_intra": spec.p_intra,
            "q_inter": spec.q_inter,
            "block_sizes": list(spec.block_sizes),
            "seed": spec.seed,
        },
        "unfolding": {
            "methods": list(config.methods),
            "include_constant": config.include_constant,
        },
        "trim": {
            "drop_top": "auto" if config.drop_top is None else config.drop_top,
            "edge_fraction": config.edge_fraction,
        },
        "statistics": {
            "density": config.density,
            "nnsd": config.nnsd,
            "sigma2": config.sigma2,
            "delta3": config.delta3,
            "density_bins": config.density_bins,
            "nnsd_bin_width": config.nnsd_bin_width,
            "l_min": config.l_min,
            "l_max": config.l_max,
            "l_step": config.l_step,
            "window_samples": config.window_samples,
        },
        "output": {"dir": str(config.output_dir), "prefix": config.prefix},
    }


def config_from_dict(data: dict) -> ExperimentConfig:
    try:
        ens = data["ensemble"]
        spec = EnsembleSpec(
            count=int(ens["count"]),
            n=int(ens["n"]),
            p_intra=float(ens["p_intra"]),
            q_inter=float(ens.get("q_inter", 0.0)),
            block_sizes=tuple(int(b) for b in ens.get("block_sizes") or ()),
            seed=int(ens["seed"]),
        )
        unf = data.get("unfolding", {})
        trim = data.get("trim", {})
        stats = data.get("statistics", {})
        out = data.get("output", {})
        drop = trim.get("drop_top", "auto")
        return ExperimentConfig(
            ensemble=spec,
            methods=tuple(unf.get("methods", ("exact",))),
            include_constant=bool(unf.get("include_constant", True)),
            drop_top=None if drop in ("auto", None) else int(drop),
            edge_fraction=float(trim.get("edge_fraction", 0.02)),
            density=bool(stats.get("density", False)),
            nnsd=bool(stats.get("nnsd", True)),
            sigma2=bool(stats.get("sigma2", False)),
            delta3=bool(stats.get("delta3", True)),
            density_bins=int(stats.get("density_bins", DEFAULT_DENSITY_BINS)),
            nnsd_bin_width=float(stats.get("nnsd_bin_width", DEFAULT_NNSD_BIN_WIDTH)),
            l_min=float(stats.get("l_min", 0.5)),
            l_max=float(stats.get("l_max", 50.0)),
            l_step=float(stats.get("l_step", 0.5)),
            window_samples=int(stats.get("window_samples", DEFAULT_WINDOW_SAMPLES)),
            output_dir=Path(out.get("dir", "results")),
            prefix=str(out.get("prefix", "run")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, NetUnfoldError):
            raise
        raise ConfigError(f"bad configuration: {exc}") from exc


_BOOL = {"true": True, "yes": True, "on": True, "1": True,
         "false": False, "no": False, "off": False, "0": False}


def parse_config_file(path: str | Path) -> ExperimentConfig:
    """Read the flat key = value format with section headers.

    Grammar: INI sections [ensemble], [unfolding], [trim], [statistics],
    [output]; comma-separated lists; booleans true/false. Unknown keys are
    rejected so typos fail loudly.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    data: dict = {}
    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{section}] in {path}")
        entries = {}
        for key, value in parser.items(section):
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}] of {path}")
            entries[key] = value.strip()
        data[section] = entries

    def conv(section, key, default, kind):
        raw = data.get(section, {}).get(key)
        if raw is None:
            return default
        if kind is bool:
            if raw.lower() not in _BOOL:
                raise ConfigError(f"bad boolean {raw!r} for {section}.{key}")
            return _BOOL[raw.lower()]
        if kind == "list":
            return tuple(tok.strip() for tok in raw.split(",") if tok.strip())
        try:
            return kind(raw)
        except ValueError as exc:
            raise ConfigError(f"bad value {raw!r} for {section}.{key}") from exc

    if "ensemble" not in data:
        raise ConfigError(f"{path} is missing the [ensemble] section")
    blocks = conv("ensemble", "block_sizes", (), "list")
    drop_raw = data.get("trim", {}).get("drop_top", "auto")
    return config_from_dict(
        {
            "ensemble": {
                "count": conv("ensemble", "count", 1, int),
                "n": conv("ensemble", "n", None, int),
                "p_intra": conv("ensemble", "p_intra", None, float),
                "q_inter": conv("ensemble", "q_inter", 0.0, float),
                "block_sizes": [int(b) for b in blocks],
                "seed": conv("ensemble", "seed", 0, int),
            },
            "unfolding": {
                "methods": conv("unfolding", "methods", ("exact",), "list"),
                "include_constant": conv("unfolding", "include_constant", True, bool),
            },
            "trim": {
                "drop_top": "auto" if drop_raw.strip().lower() == "auto" else int(drop_raw),
                "edge_fraction": conv("trim", "edge_fraction", 0.02, float),
            },
            "statistics": {
                "density": conv("statistics", "density", False, bool),
                "nnsd": conv("statistics", "nnsd", True, bool),
                "sigma2": conv("statistics", "sigma2", False, bool),
                "delta3": conv("statistics", "delta3", True, bool),
                "density_bins": conv("statistics", "density_bins", DEFAULT_DENSITY_BINS, int),
                "nnsd_bin_width": conv(
                    "statistics", "nnsd_bin_width", DEFAULT_NNSD_BIN_WIDTH, float
                ),
                "l_min": conv("statistics", "l_min", 0.5, float),
                "l_max": conv("statistics", "l_max", 50.0, float),
                "l_step": conv("statistics", "l_step", 0.5, float),
                "window_samples": conv(
                    "statistics", "window_samples", DEFAULT_WINDOW_SAMPLES, int
                ),
            },
            "output": {
                "dir": data.get("output", {}).get("dir", "results"),
                "prefix": data.get("output", {}).get("prefix", "run"),
            },
        }
    )


@dataclass
class ResultBundle:
    """What a run produced: config echo, in-memory results, file manifest."""

    config: dict
    curves: dict = field(default_factory=dict)
    histograms: dict = field(default_factory=dict)
    files: dict = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)
    output_dir: Path = Path(".")


class _MemberResult:
    __slots__ = ("density_spectrum", "per_method")

    def __init__(self):
        self.density_spectrum = None
        self.per_method = {}


def _member_task(config: ExperimentConfig, index: int, methods, l_grid) -> _MemberResult:
    stage = "generate"
    try:
        matrix = generate_member(config.ensemble, index)
        stage = "eigenvalues"
        spec = eigenvalues(matrix, meta={"member": index})
        drop = config.effective_drop_top()
        out = _MemberResult()
        if config.density:
            stage = "trim(density)"
            out.density_spectrum = trim_spectrum(spec, drop, 0.0)
        if config.nnsd or config.sigma2 or config.delta3:
            stage = "trim"
            trimmed = trim_spectrum(spec, drop, config.edge_fraction)
            base = mix64(config.ensemble.seed, index)
            for name, method in methods:
                stage = f"unfold[{name}]"
                unfolded = unfold(trimmed, method)
                entry = {}
                if config.nnsd:
                    stage = f"spacings[{name}]"
                    entry["spacings"] = spacings(unfolded)
                if config.sigma2:
                    stage = f"sigma2[{name}]"
                    entry["sigma2"] = sigma2_curve(
                        unfolded, l_grid, config.window_samples, mix64(base, _TAG_SIGMA2)
                    )
                if config.delta3:
                    stage = f"delta3[{name}]"
                    entry["delta3"] = delta3_curve(
                        unfolded, l_grid, config.window_samples, mix64(base, _TAG_DELTA3)
                    )
                out.per_method[name] = entry
        return out
    except Exception as exc:
        raise PipelineError(
            f"member {index} failed at stage {stage}: {exc}", member=index, stage=stage
        ) from exc


def _map_members(config: ExperimentConfig, methods, l_grid) -> list[_MemberResult]:
    indices = range(config.ensemble.count)
    # One BLAS thread per eigendecomposition in every configuration, so the
    # arithmetic (and therefore every output byte) is identical no matter
    # how many members run concurrently.
    with threadpool_limits(limits=1, user_api="blas"):
        if config.parallelism == 1:
            return [_member_task(config, i, methods, l_grid) for i in indices]
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            return list(pool.map(lambda i: _member_task(config, i, methods, l_grid), indices))


def _provenance(config: ExperimentConfig) -> dict:
    return {
        "package": "netunfold",
        "version": PACKAGE_VERSION,
        "kernel_backend": BACKEND,
        "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "seed": config.ensemble.seed,
    }


def run_experiment(config: ExperimentConfig, prefix_map: dict | None = None) -> ResultBundle:
    """Generate, decompose, unfold and measure one ensemble; write CSVs.

    `prefix_map` optionally renames the per-statistic file prefixes
    (e.g. nnsd -> fig2a). On any member failure, whatever was reduced so far
    is written together with a FAILED marker in the manifest, then the
    error is re-raised.
    """
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    prefixes = {stat: config.prefix for stat in ("density", "nnsd", "sigma2", "delta3")}
    prefixes.update(prefix_map or {})
    methods = [(name, resolve_method(name, config)) for name in config.methods]
    l_grid = config.l_grid()
    bundle = ResultBundle(config=config_to_dict(config), output_dir=outdir)
    manifest = {
        "provenance": _provenance(config),
        "config": bundle.config,
        "files": {},
        "status": "ok",
    }
    failure = None
    members: list[_MemberResult] = []
    try:
        members = _map_members(config, methods, l_grid)
    except PipelineError as exc:
        failure = exc

    def emit(name: str, writer, obj) -> None:
        path = outdir / name
        writer(obj, path)
        digest = nio.sha256_of_file(path)
        manifest["files"][name] = {"sha256": digest}
        bundle.files[name] = digest

    if failure is None:
        spec = config.ensemble
        n_blocks = len(spec.block_sizes)
        if config.density:
            hist = density_histogram(
                [m.density_spectrum for m in members], config.density_bins
            )
            bundle.histograms["density"] = hist
            emit(f"{prefixes['density']}_density.csv", nio.write_density_hist_csv, hist)
            if n_blocks == 1 and 0.0 < spec.p_intra < 1.0:
                rescaled = rescale_density(hist, spec.n, spec.p_intra)
                bundle.histograms["density_rescaled"] = rescaled
                emit(
                    f"{prefixes['density']}_density_rescaled.csv",
                    nio.write_density_hist_csv,
                    rescaled,
                )
                ref = theory_curve(
                    "semicircle_density", np.linspace(-2.2, 2.2, 221), n=1.0, radius=2.0
                )
                emit(
                    f"{prefixes['density']}_semicircle_reference.csv",
                    nio.write_statcurve_csv,
                    ref,
                )
        for name, method in methods:
            emit(
                f"{config.prefix}_method_{name}.json",
                nio.write_json,
                {
                    "method": method.describe(),
                    "trim": {
                        "drop_top": config.effective_drop_top(),
                        "edge_fraction": config.edge_fraction,
                    },
                },
            )
            if config.nnsd:
                hist = nnsd(
                    [m.per_method[name]["spacings"] for m in members],
                    config.nnsd_bin_width,
                )
                bundle.histograms[f"nnsd_{name}"] = hist
                emit(f"{prefixes['nnsd']}_nnsd_{name}.csv", nio.write_spacing_hist_csv, hist)
            for stat in ("sigma2", "delta3"):
                if not getattr(config, stat):
                    continue
                curve = ensemble_average(
                    [m.per_method[name][stat] for m in members], l_grid, stat, name
                )
                bundle.curves[f"{stat}_{name}"] = curve
                emit(f"{prefixes[stat]}_{stat}_{name}.csv", nio.write_statcurve_csv, curve)
        if config.nnsd:
            ref_kind = "goe_nnsd" if n_blocks == 1 else ("two_goe_nnsd" if n_blocks == 2 else None)
            if ref_kind:
                sgrid = np.arange(0, 4.0 + 1e-9, 0.02)
                emit(
                    f"{prefixes['nnsd']}_{ref_kind}_reference.csv",
                    nio.write_statcurve_csv,
                    theory_curve(ref_kind, sgrid),
                )
        if config.sigma2:
            emit(
                f"{prefixes['sigma2']}_goe_sigma2_reference.csv",
                nio.write_statcurve_csv,
                theory_curve("goe_sigma2", l_grid),
            )
        if config.delta3:
            emit(
                f"{prefixes['delta3']}_goe_delta3_reference.csv",
                nio.write_statcurve_csv,
                theory_curve("goe_delta3", l_grid),
            )
    else:
        manifest["status"] = "FAILED"
        manifest["failure"] = {
            "member": failure.member,
            "stage": failure.stage,
            "error": str(failure),
        }
    bundle.manifest = manifest
    nio.write_json(manifest, outdir / f"{config.prefix}_manifest.json")
    if failure is not None:
        raise failure
    return bundle


DEFAULT_FIGURE_SEED = 20260811


def reproduce_figure(
    which: int,
    seed: int = DEFAULT_FIGURE_SEED,
    output_dir: str | Path = "results",
    parallelism: int = 1,
) -> ResultBundle:
    """Canned experiment configurations for the three standard figures.

    1: rescaled spectral densities of random networks at three mean degrees
       against the semicircle; 2: NNSD and rigidity of dense random networks
       under exact and polynomial unfoldings; 3: the same for a two-cluster
       network with the superposed two-GOE spacing reference.
    """
    outdir = Path(output_dir)
    if which == 1:
        return _figure1(seed, outdir, parallelism)
    if which == 2:
        config = ExperimentConfig(
            ensemble=EnsembleSpec(count=20, n=1000, p_intra=0.1, seed=seed),
            methods=("exact", "poly3", "poly4", "poly5"),
            nnsd=True,
            delta3=True,
            output_dir=outdir,
            prefix="fig2",
            parallelism=parallelism,
        )
        return run_experiment(config, prefix_map={"nnsd": "fig2a", "delta3": "fig2b"})
    if which == 3:
        config = ExperimentConfig(
            ensemble=EnsembleSpec(
                count=20, n=1000, p_intra=0.1, q_inter=0.0,
                block_sizes=(500, 500), seed=seed,
            ),
            methods=("exact", "poly3", "poly4", "poly5"),
            nnsd=True,
            delta3=True,
            output_dir=outdir,
            prefix="fig3",
            parallelism=parallelism,
        )
        return run_experiment(config, prefix_map={"nnsd": "fig3a", "delta3": "fig3b"})
    raise ConfigError(f"figure id must be 1, 2 or 3, got {which!r}")


def _figure1(seed: int, outdir: Path, parallelism: int) -> ResultBundle:
    outdir.mkdir(parents=True, exist_ok=True)
    bundle = ResultBundle(config={}, output_dir=outdir)
    manifest: dict = {"files": {}, "status": "ok", "runs": []}
    probabilities = (0.001, 0.01, 0.1)
    for p in probabilities:
        config = ExperimentConfig(
            ensemble=EnsembleSpec(
                count=20, n=1000, p_intra=p, seed=mix64(seed, int(p * 1_000_000))
            ),
            methods=("exact",),
            density=True,
            nnsd=False,
            delta3=False,
            edge_fraction=0.0,
            output_dir=outdir,
            prefix=f"fig1_p{p:g}",
            parallelism=parallelism,
        )
        methods = [("exact", resolve_method("exact", config))]
        members = _map_members(config, methods, config.l_grid())
        hist = density_histogram([m.density_spectrum for m in members], config.density_bins)
        rescaled = rescale_density(hist, config.ensemble.n, p)
        name = f"fig1_density_p{p:g}.csv"
        nio.write_density_hist_csv(rescaled, outdir / name)
        manifest["files"][name] = {"sha256": nio.sha256_of_file(outdir / name)}
        bundle.files[name] = manifest["files"][name]["sha256"]
        bundle.histograms[f"density_p{p:g}"] = rescaled
        manifest["runs"].append(config_to_dict(config))
    ref = theory_curve("semicircle_density", np.linspace(-2.2, 2.2, 221), n=1.0, radius=2.0)
    nio.write_statcurve_csv(ref, outdir / "fig1_semicircle_reference.csv")
    digest = nio.sha256_of_file(outdir / "fig1_semicircle_reference.csv")
    manifest["files"]["fig1_semicircle_reference.csv"] = {"sha256": digest}
    bundle.files["fig1_semicircle_reference.csv"] = digest
    manifest["provenance"] = {
        "package": "netunfold",
        "version": PACKAGE_VERSION,
        "kernel_backend": BACKEND,
        "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "seed": seed,
    }
    bundle.manifest = manifest
    nio.write_json(manifest, outdir / "fig1_manifest.json")
    return bundle


def analyze_file(
    path: str | Path,
    output_dir: str | Path = "results",
    methods: Sequence[str] = ("poly3",),
    drop_top: int = 1,
    edge_fraction: float = 0.02,
    seed: int = 0,
    l_min: float = 0.5,
    l_max: float = 50.0,
    l_step: float = 0.5,
    window_samples: int = DEFAULT_WINDOW_SAMPLES,
    nnsd_bin_width: float = DEFAULT_NNSD_BIN_WIDTH,
) -> ResultBundle:
    """Single-spectrum pipeline for a real network edge list.

    No ensemble averaging (standard errors are zero). Only polynomial
    unfolding is offered by default, since a real network has no known
    analytic level density. The rigidity grid is capped at half the
    unfolded span.
    """
    outdir = Path(output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    with open(path, encoding="utf-8") as fh:
        matrix = ingest_edge_list(fh)
    spec = eigenvalues(matrix, meta={"source": str(path)})
    trimmed = trim_spectrum(spec, drop_top, edge_fraction)
    bundle = ResultBundle(config={}, output_dir=outdir)
    manifest: dict = {
        "provenance": {
            "package": "netunfold",
            "version": PACKAGE_VERSION,
            "kernel_backend": BACKEND,
            "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "seed": seed,
            "source": str(path),
            "nodes": matrix.n,
            "edges": matrix.edge_count(),
        },
        "files": {},
        "status": "ok",
    }

    def emit(name, writer, obj):
        fpath = outdir / name
        writer(obj, fpath)
        manifest["files"][name] = {"sha256": nio.sha256_of_file(fpath)}
        bundle.files[name] = manifest["files"][name]["sha256"]

    emit("analyze_spectrum.csv", nio.write_spectrum_csv, spec)
    for name in methods:
        method = _analyze_method(name)
        unfolded = unfold(trimmed, method)
        emit(f"analyze_unfolded_{name}.csv", nio.write_unfolded_csv, unfolded)
        emit(f"analyze_method_{name}.json", _sidecar_writer, unfolded)
        sp = spacings(unfolded)
        hist = nnsd([sp], nnsd_bin_width)
        bundle.histograms[f"nnsd_{name}"] = hist
        emit(f"analyze_nnsd_{name}.csv", nio.write_spacing_hist_csv, hist)
        span = unfolded.levels[-1] - unfolded.levels[0]
        grid = np.arange(l_min, l_max + 1e-9, l_step)
        grid = grid[grid <= span / 2]
        if grid.size:
            vals = delta3_curve(unfolded, grid, window_samples, mix64(seed, _TAG_DELTA3))
            curve = ensemble_average([vals], grid, "delta3", name)
            bundle.curves[f"delta3_{name}"] = curve
            emit(f"analyze_delta3_{name}.csv", nio.write_statcurve_csv, curve)
            manifest.setdefault("l_max_effective", {})[name] = float(grid[-1])
    bundle.manifest = manifest
    nio.write_json(manifest, outdir / "analyze_manifest.json")
    return bundle


def _analyze_method(name: str) -> UnfoldingMethod:
    parsed = _parse_method_name(name)
    if parsed == "exact":
        raise ConfigError(
            "exact unfolding is unavailable for ingested networks "
            "(no analytic level density); use polyN"
        )
    return PolynomialFit(degree=int(parsed[4:]))


def _sidecar_writer(unfolded, path):
    nio.write_method_sidecar(unfolded, path)
