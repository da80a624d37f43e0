"""Figure presets: the published parameter sets as reproducible data tables.

Each preset returns a PresetOutput with a primary table (written to the
--out CSV) and optional extra tables written alongside.  fig3 reports its
headline metrics under both the published closed form ("paper" bracket)
and the exact transport solution ("exact"), and under both readings of the
plotted absorption coefficient (amplitude / intensity), because the
published anchor value sits on one specific combination.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import ExperimentConfig, SweepAxis
from .sweep import METRICS, point_metrics, run_sweep, spectral_ratio_curve

__all__ = ["PresetOutput", "PRESETS", "build_preset_config", "run_preset"]


@dataclass(frozen=True)
class PresetOutput:
    name: str
    header: tuple
    rows: list = field(repr=False)
    extras: dict = field(default_factory=dict, repr=False)  # name -> (header, rows)

    def cell(self, column: str, row: int = 0):
        return self.rows[row][self.header.index(column)]


def _base_config(**kw) -> ExperimentConfig:
    defaults = dict(alpha_per_cm=1.0, delta_n_per_s=1e9, length_cm=1.0,
                    omega21_per_s=1e10, delta_omega_ph_per_s=2e8)
    defaults.update(kw)
    return ExperimentConfig(**defaults)


def build_preset_config(name: str) -> ExperimentConfig:
    if name == "fig2":
        return _base_config(delta_omega_ph_per_s=2e8)
    if name == "fig3":
        return _base_config(delta_omega_ph_per_s=7e8, length_cm=1.0)
    if name == "fig4":
        return _base_config(axes=(SweepAxis("length_cm", 0.5, 4.0, 15),
                                  SweepAxis("omega21_per_s", 1e10, 1e11, 11)))
    if name == "fig5":
        return _base_config(axes=(SweepAxis("omega21_per_s", 1e10, 1e11, 11),
                                  SweepAxis("delta_omega_ph_per_s", 1e8, 2e9, 11)))
    raise ValueError(f"unknown preset {name!r} (fig2|fig3|fig4|fig5)")


def _ratio_curve(cfg: ExperimentConfig, delta_axis, lengths=None,
                 bracket="exact"):
    medium = cfg.medium()
    grid = cfg.grid()
    photon = cfg.photon(grid)
    pulses = cfg.pulses(medium, grid)
    return spectral_ratio_curve(medium, photon, pulses, cfg.schedule(),
                                delta_axis, lengths=lengths, bracket=bracket)


def _run_fig2(cfg: ExperimentConfig) -> PresetOutput:
    # caption axes: Delta in +-5e8 (101 pts), L in 1..4 cm (31 pts)
    delta = np.linspace(-5e8, 5e8, 101)
    lengths = np.linspace(1.0, 4.0, 31)
    rows = _ratio_curve(cfg, delta, lengths=lengths)
    center = [(L, r) for (d, L, r) in rows if d == 0.0]
    return PresetOutput(
        name="fig2", header=("delta_per_s", "length_cm", "ratio"), rows=rows,
        extras={"center": (("length_cm", "center_ratio"), center)})


def _run_fig3(cfg: ExperimentConfig) -> PresetOutput:
    delta = np.linspace(-2.1e9, 2.1e9, 201)
    rows = []
    curves = {}
    for bracket in ("exact", "paper"):
        for conv in ("amplitude", "intensity"):
            c = cfg.replace(alpha_convention=conv, bracket=bracket)
            m = point_metrics(c)
            curve = _ratio_curve(c, delta, bracket=bracket)
            r = np.array([x[2] for x in curve])
            asym = float(np.max(np.abs(r - r[::-1])))
            rows.append((bracket, conv, m["total_probability"],
                         m["peak_ratio"], asym, m["distortion_ratio_center"]))
            if conv == "amplitude":
                curves[bracket] = r
    curve_rows = [(float(d), float(e), float(p))
                  for d, e, p in zip(delta, curves["exact"], curves["paper"])]
    return PresetOutput(
        name="fig3",
        header=("bracket", "alpha_convention", "total_probability",
                "peak_ratio", "asymmetry", "distortion_ratio_center"),
        rows=rows,
        extras={"curve": (("delta_per_s", "ratio_exact", "ratio_paper"),
                          curve_rows)})


def _run_sweep_preset(name: str, cfg: ExperimentConfig,
                      workers: int = 1) -> PresetOutput:
    res = run_sweep(cfg, workers=workers)
    rows = [tuple(v) + tuple(m[k] for k in METRICS) + (s,)
            for v, m, s in res.rows]
    return PresetOutput(name=name,
                        header=res.axis_names + METRICS + ("status",),
                        rows=rows)


def run_preset(name: str, cfg: ExperimentConfig | None = None,
               workers: int = 1) -> PresetOutput:
    cfg = build_preset_config(name) if cfg is None else cfg
    if name == "fig2":
        return _run_fig2(cfg)
    if name == "fig3":
        return _run_fig3(cfg)
    if name in ("fig4", "fig5"):
        return _run_sweep_preset(name, cfg, workers=workers)
    raise ValueError(f"unknown preset {name!r}")


PRESETS = ("fig2", "fig3", "fig4", "fig5")
