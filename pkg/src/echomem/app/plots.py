"""Matplotlib rendering for the report paths (headless, files only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_preset", "plot_spectra", "plot_trace"]

_DPI = 150


def _save(fig, path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def plot_preset(output, path) -> Path:
    """Render a preset's primary table as the corresponding figure."""
    name = output.name
    if name == "fig2":
        return _plot_fig2(output, path)
    if name == "fig3":
        return _plot_fig3(output, path)
    return _plot_surface(output, path)


def _plot_fig2(output, path):
    rows = np.array(output.rows, dtype=float)
    d, L, r = rows[:, 0], rows[:, 1], rows[:, 2]
    lengths = np.unique(L)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    for Lsel in lengths[:: max(1, len(lengths) // 6)]:
        m = L == Lsel
        ax1.plot(d[m] / 1e8, r[m], label=f"L = {Lsel:.1f} cm")
    ax1.set_xlabel(r"detuning $\Delta$ ($10^8$ s$^{-1}$)")
    ax1.set_ylabel("reconstruction ratio")
    ax1.legend(fontsize=7)
    hdr, center = output.extras["center"]
    c = np.array(center, dtype=float)
    ax2.plot(c[:, 0], c[:, 1], "o-", ms=3)
    ax2.set_xlabel("L (cm)")
    ax2.set_ylabel("center ratio")
    ax2.set_ylim(0, 1.05)
    return _save(fig, path)


def _plot_fig3(output, path):
    hdr, curve = output.extras["curve"]
    c = np.array(curve, dtype=float)
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(c[:, 0] / 1e9, c[:, 1], label="exact transport")
    ax.plot(c[:, 0] / 1e9, c[:, 2], "--", label="published closed form")
    ax.set_xlabel(r"detuning $\Delta$ ($10^9$ s$^{-1}$)")
    ax.set_ylabel("reconstruction ratio")
    ax.legend(fontsize=8)
    return _save(fig, path)


def _plot_surface(output, path):
    rows = [r for r in output.rows if r[-1] == "ok"]
    a0 = np.array([r[0] for r in rows], dtype=float)
    a1 = np.array([r[1] for r in rows], dtype=float)
    p = np.array([r[2] for r in rows], dtype=float)
    x0, x1 = np.unique(a0), np.unique(a1)
    grid = np.full((x0.size, x1.size), np.nan)
    i0 = np.searchsorted(x0, a0)
    i1 = np.searchsorted(x1, a1)
    grid[i0, i1] = p
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    pm = ax.pcolormesh(x1, x0, grid, shading="nearest")
    fig.colorbar(pm, ax=ax, label="total probability")
    ax.set_xlabel(output.header[1])
    ax.set_ylabel(output.header[0])
    return _save(fig, path)


def plot_spectra(path, curves, xlabel=r"detuning ($s^{-1}$)",
                 ylabel=r"$|f|^2$ (s)") -> Path:
    """Overlay labelled (grid, |values|^2) curves."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    for label, spec in curves:
        ax.plot(spec.grid.points(), np.abs(spec.values) ** 2, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_trace(path, times, norms_by_label) -> Path:
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    for label, n in norms_by_label.items():
        ax.plot(np.asarray(times) / 1e-9, n, label=label)
    ax.set_xlabel("time (ns)")
    ax.set_ylabel("norm")
    ax.legend(fontsize=8)
    return _save(fig, path)
