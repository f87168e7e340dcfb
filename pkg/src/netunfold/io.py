"""CSV and JSON persistence for spectra, unfolded levels and statistics.

All floats are written with 17 significant digits so a round-trip preserves
the exact double; files use '\\n' line endings regardless of platform so
repeated runs are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
import numpy as np

from .errors import EdgeListParseError
from .spectra import DensityHistogram, Spectrum
from .stats import SpacingHistogram, StatCurve
from .unfolding import UnfoldedSpectrum


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_spectrum_csv(spectrum: Spectrum, path: str | Path) -> None:
    lines = ["index,eigenvalue"]
    lines += [f"{i},{_fmt(v)}" for i, v in enumerate(spectrum.values)]
    _write_text(Path(path), "\n".join(lines) + "\n")


def read_spectrum_csv(path: str | Path) -> Spectrum:
    values = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "index,eigenvalue":
            raise EdgeListParseError(f"unexpected header {header!r} in {path}")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                _, val = line.split(",")
                values.append(float(val))
            except ValueError as exc:
                raise EdgeListParseError(f"bad row {line!r}", lineno) from exc
    arr = np.array(values, dtype=np.float64)
    return Spectrum(values=arr, source_n=arr.size, source_meta={"imported_from": str(path)})


def write_unfolded_csv(unfolded: UnfoldedSpectrum, path: str | Path) -> None:
    lines = ["index,epsilon"]
    lines += [f"{i},{_fmt(v)}" for i, v in enumerate(unfolded.levels)]
    _write_text(Path(path), "\n".join(lines) + "\n")


def write_method_sidecar(unfolded: UnfoldedSpectrum, path: str | Path) -> None:
    """JSON sidecar tracing a statistic back to its unfolding and trim."""
    payload = {
        "method": unfolded.method.describe(),
        "trim": unfolded.source_meta.get("trim"),
        "source_meta": {
            k: v for k, v in unfolded.source_meta.items() if k != "trim"
        },
    }
    _write_text(Path(path), json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_statcurve_csv(curve: StatCurve, path: str | Path) -> None:
    lines = ["L,mean,stderr,kind,method"]
    for L, mu, se in zip(curve.L_values, curve.means, curve.std_errors):
        lines.append(f"{_fmt(L)},{_fmt(mu)},{_fmt(se)},{curve.kind},{curve.method}")
    _write_text(Path(path), "\n".join(lines) + "\n")


def read_statcurve_csv(path: str | Path) -> StatCurve:
    L, mu, se = [], [], []
    kind = method = ""
    with open(path, encoding="utf-8") as fh:
        fh.readline()
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) != 5:
                continue
            L.append(float(parts[0]))
            mu.append(float(parts[1]))
            se.append(float(parts[2]))
            kind, method = parts[3], parts[4]
    return StatCurve(
        L_values=np.array(L), means=np.array(mu), std_errors=np.array(se),
        kind=kind, method=method,
    )


def write_spacing_hist_csv(hist: SpacingHistogram, path: str | Path) -> None:
    lines = ["s_lo,s_hi,density"]
    for lo, hi, d in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.densities):
        lines.append(f"{_fmt(lo)},{_fmt(hi)},{_fmt(d)}")
    _write_text(Path(path), "\n".join(lines) + "\n")


def write_density_hist_csv(hist: DensityHistogram, path: str | Path) -> None:
    lines = ["e_lo,e_hi,density"]
    for lo, hi, d in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.densities):
        lines.append(f"{_fmt(lo)},{_fmt(hi)},{_fmt(d)}")
    _write_text(Path(path), "\n".join(lines) + "\n")


def sha256_of_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_json(payload: dict, path: str | Path) -> None:
    _write_text(Path(path), json.dumps(payload, indent=2, sort_keys=True) + "\n")
