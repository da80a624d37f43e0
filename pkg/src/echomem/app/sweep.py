"""Parameter sweeps, figure-style ratio curves, and deterministic CSV output."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..constants import C_LIGHT
from ..echo import EchoResult, distortion_ratio, echo_spectrum
from ..mapping import norm
from .config import ExperimentConfig

__all__ = ["SweepResult", "total_probability", "point_metrics", "run_sweep",
           "write_csv", "spectral_ratio_curve", "write_spectrum"]

METRICS = ("total_probability", "peak_ratio", "distortion_ratio_center")


def total_probability(echo: EchoResult) -> float:
    """Echo norm relative to the unit input norm."""
    return echo.total_probability


def _interp_ratio(echo: EchoResult, photon, u: float) -> float:
    """|f2(-u...)|^2 / |f_in(0)|^2 evaluated off-grid by interpolation."""
    grid = echo.spectrum.grid
    f2m2 = np.abs(echo.spectrum.values) ** 2
    fin0 = np.interp(0.0, grid.points(), np.abs(photon.spectrum.values) ** 2)
    return float(np.interp(u, grid.points(), f2m2) / fin0)


def point_metrics(cfg: ExperimentConfig) -> dict:
    """The three per-point scalars for one parameter tuple."""
    medium = cfg.medium()
    grid = cfg.grid()
    photon = cfg.photon(grid)
    pulses = cfg.pulses(medium, grid)
    echo = echo_spectrum(medium, photon, pulses, cfg.schedule(),
                         bracket=cfg.bracket)
    return {
        "total_probability": echo.total_probability,
        "peak_ratio": _interp_ratio(echo, photon, 0.0),
        "distortion_ratio_center": float(distortion_ratio(medium, 0.0)),
    }


@dataclass(frozen=True)
class SweepResult:
    axis_names: tuple
    axis_values: tuple                  # tuple of arrays, outer axis first
    rows: list = field(repr=False)      # [(axis vals..., metrics dict), ...]

    @property
    def n_rows(self) -> int:
        return len(self.rows)


def _apply_axes(cfg: ExperimentConfig, names, vals) -> ExperimentConfig:
    return cfg.replace(**dict(zip(names, vals)))


def _sweep_point(args) -> tuple:
    cfg, names, vals = args
    try:
        m = point_metrics(_apply_axes(cfg, names, vals))
        bad = any(not math.isfinite(v) for v in m.values())
        return vals, m, ("nan" if bad else "ok")
    except Exception:
        nanm = {k: float("nan") for k in METRICS}
        return vals, nanm, "nan"


def run_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    """Evaluate the sweep grid in deterministic outer-axis-major order.

    A point whose metrics come out non-finite is flagged, not fatal.
    Results are independent of the worker count.
    """
    axes = cfg.axes
    names = tuple(a.name for a in axes)
    vals = tuple(a.values() for a in axes)
    if len(axes) == 0:
        combos = [()]
    elif len(axes) == 1:
        combos = [(v,) for v in vals[0]]
    else:
        combos = [(v0, v1) for v0 in vals[0] for v1 in vals[1]]
    tasks = [(cfg, names, c) for c in combos]
    if workers <= 1:
        results = [_sweep_point(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, tasks, chunksize=8))
    rows = [(v, m, status) for v, m, status in results]
    return SweepResult(axis_names=names, axis_values=vals, rows=rows)


def write_csv(result: SweepResult, path) -> None:
    """Axes first (declaration order), then metrics, then a status flag.

    9 significant digits, no timestamps: identical inputs give
    byte-identical files.
    """
    lines = [",".join(result.axis_names + METRICS + ("status",))]
    for vals, metrics, status in result.rows:
        cells = [f"{v:.9g}" for v in vals]
        cells += [f"{metrics[k]:.9g}" for k in METRICS]
        cells.append(status)
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_spectrum(spec, path) -> None:
    """Two-column text dump: detuning_per_s, magnitude_squared."""
    u = spec.grid.points()
    m2 = np.abs(spec.values) ** 2
    lines = ["# detuning_per_s magnitude_squared"]
    lines += [f"{ui:.9e} {vi:.9e}" for ui, vi in zip(u, m2)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def spectral_ratio_curve(medium, photon, pulses, sched, delta_axis,
                         lengths=None, bracket: str = "exact",
                         c: float = C_LIGHT) -> list:
    """Rows (delta, L, ratio) of the reconstructed-spectrum ratio.

    ratio(delta) = |f2 at frequency omega31 - delta|^2 / |f_in(omega31)|^2,
    the figure normalization (value at the input spectrum center).
    """
    from dataclasses import replace
    grid = photon.spectrum.grid
    d = np.asarray(delta_axis, dtype=float)
    if np.max(np.abs(d)) > abs(grid.stop):
        raise ValueError("delta axis exceeds the spectral grid span")
    fin0 = float(np.interp(0.0, grid.points(),
                           np.abs(photon.spectrum.values) ** 2))
    out = []
    for L in ([medium.length] if lengths is None else lengths):
        med_l = replace(medium, length=float(L))
        echo = echo_spectrum(med_l, photon, pulses, sched, bracket=bracket, c=c)
        f2m2 = np.abs(echo.spectrum.values) ** 2
        # f2 at frequency omega31 - delta lives at grid detuning u = -delta
        vals = np.interp(-d, grid.points(), f2m2) / fin0
        out.extend((float(di), float(L), float(ri)) for di, ri in zip(d, vals))
    return out
