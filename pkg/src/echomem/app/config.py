"""Line-oriented experiment configuration.

Format: `key = value` lines under `[section]` headers, `#` comments.  Units
are embedded in key names (cm, s, s^-1 as `_per_s`, rad).  Validation
collects every violation with its line number before failing.

Example::

    [medium]
    alpha_per_cm = 1.0
    alpha_convention = amplitude
    delta_n_per_s = 1.0e9
    length_cm = 1.0
    omega21_per_s = 1.0e10

    [photon]
    delta_omega_ph_per_s = 7.0e8

    [sweep]
    axis1 = length_cm 1.0 4.0 31
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

import numpy as np

from ..constants import OMEGA31_DEFAULT
from ..control import ControlPulse, flat_filter_duration
from ..echo import ProtocolSchedule
from ..mapping import Medium, PhotonState
from ..numerics import FrequencyGrid

__all__ = ["ConfigError", "SweepAxis", "ExperimentConfig", "parse_config",
           "SWEEPABLE"]

SWEEPABLE = ("length_cm", "alpha_per_cm", "omega21_per_s",
             "delta_omega_ph_per_s", "delta_n_per_s")

_SECTIONS = {
    "medium": {"alpha_per_cm", "alpha_convention", "delta_n_per_s",
               "length_cm", "omega21_per_s", "omega31_per_s"},
    "photon": {"delta_omega_ph_per_s", "carrier_offset_per_s",
               "grid_span_factor", "grid_points"},
    "pulses": {"theta1_rad", "theta2_rad", "duration_s", "t1_s", "t2_s",
               "phi1_rad", "phi2_rad"},
    "echo": {"bracket"},
    "sweep": {"axis1", "axis2"},
}
_REQUIRED = (("medium", "alpha_per_cm"), ("medium", "delta_n_per_s"),
             ("medium", "length_cm"), ("medium", "omega21_per_s"),
             ("photon", "delta_omega_ph_per_s"))


class ConfigError(ValueError):
    """Carries every violation found, each prefixed with its line number."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.violations))


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class ExperimentConfig:
    alpha_per_cm: float
    delta_n_per_s: float
    length_cm: float
    omega21_per_s: float
    delta_omega_ph_per_s: float
    omega31_per_s: float = OMEGA31_DEFAULT
    alpha_convention: str = "amplitude"
    carrier_offset_per_s: float = 0.0
    grid_span_factor: float = 25.0
    grid_points: int = 4096
    theta1_rad: float = float(np.pi)
    theta2_rad: float = float(np.pi)
    duration_s: float | None = None       # None -> flat-filter choice
    t1_s: float = 2.0e-8
    t2_s: float = 4.0e-8
    phi1_rad: float = 0.0
    phi2_rad: float = 0.0
    bracket: str = "exact"
    axes: tuple = dfield(default_factory=tuple)

    def replace(self, **kw) -> "ExperimentConfig":
        from dataclasses import replace as _r
        return _r(self, **kw)

    # -- builders -----------------------------------------------------------
    def alpha_center(self) -> float:
        return self.alpha_per_cm * (0.5 if self.alpha_convention == "intensity"
                                    else 1.0)

    def medium(self) -> Medium:
        return Medium.lorentzian(self.alpha_center(), self.delta_n_per_s,
                                 self.length_cm, self.omega31_per_s,
                                 self.omega21_per_s)

    def grid(self) -> FrequencyGrid:
        span = self.grid_span_factor * max(self.delta_omega_ph_per_s,
                                           self.delta_n_per_s)
        return FrequencyGrid.symmetric(span, self.grid_points)

    def photon(self, grid: FrequencyGrid | None = None) -> PhotonState:
        g = self.grid() if grid is None else grid
        return PhotonState.lorentzian(
            self.delta_omega_ph_per_s, g,
            carrier=self.omega31_per_s + self.carrier_offset_per_s)

    def pulses(self, medium: Medium | None = None,
               grid: FrequencyGrid | None = None):
        m = self.medium() if medium is None else medium
        g = self.grid() if grid is None else grid
        dur = self.duration_s
        if dur is None:
            dur = flat_filter_duration(abs(g.stop), m)
        p1 = ControlPulse(self.theta1_rad, dur, time=self.t1_s,
                          direction=+1, phase=self.phi1_rad)
        p2 = ControlPulse(self.theta2_rad, dur, time=self.t2_s,
                          direction=-1, phase=self.phi2_rad)
        return p1, p2

    def schedule(self) -> ProtocolSchedule:
        return ProtocolSchedule(t1=self.t1_s, t2=self.t2_s)


def _parse_lines(text: str):
    """Yield (lineno, section, key, value) with syntax violations collected."""
    section = None
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            yield i, "section", section, None
            continue
        if "=" not in line:
            yield i, "error", f"line {i}: expected 'key = value', got {raw.strip()!r}", None
            continue
        key, _, val = line.partition("=")
        yield i, "pair", (section, key.strip().lower()), val.strip()


def parse_config(text: str) -> ExperimentConfig:
    """Parse and fully validate; raises ConfigError listing all violations."""
    errors: list[str] = []
    values: dict[tuple, tuple] = {}     # (section, key) -> (lineno, raw)
    axes: list[tuple] = []              # (lineno, raw)

    for i, kind, a, b in _parse_lines(text):
        if kind == "error":
            errors.append(a)
        elif kind == "section":
            if a not in _SECTIONS:
                errors.append(f"line {i}: unknown section [{a}]")
        elif kind == "pair":
            section, key = a
            if section is None:
                errors.append(f"line {i}: key {key!r} before any [section]")
                continue
            if section in _SECTIONS and key not in _SECTIONS[section]:
                errors.append(f"line {i}: unknown key {key!r} in [{section}]")
                continue
            if section == "sweep":
                axes.append((i, b))
            else:
                values[(section, key)] = (i, b)

    for sec, key in _REQUIRED:
        if (sec, key) not in values:
            errors.append(f"missing required key {key!r} in [{sec}]")

    def num(sec, key, default=None, positive=False, nonneg=False):
        if (sec, key) not in values:
            return default
        lineno, raw = values[(sec, key)]
        try:
            v = float(raw)
        except ValueError:
            errors.append(f"line {lineno}: {key} must be a number, got {raw!r}")
            return default
        if positive and v <= 0:
            errors.append(f"line {lineno}: {key} must be > 0, got {v}")
            return default
        if nonneg and v < 0:
            errors.append(f"line {lineno}: {key} must be >= 0, got {v}")
            return default
        return v

    kw = {}
    kw["alpha_per_cm"] = num("medium", "alpha_per_cm", nonneg=True)
    kw["delta_n_per_s"] = num("medium", "delta_n_per_s", positive=True)
    kw["length_cm"] = num("medium", "length_cm", positive=True)
    kw["omega21_per_s"] = num("medium", "omega21_per_s", positive=True)
    kw["omega31_per_s"] = num("medium", "omega31_per_s", OMEGA31_DEFAULT,
                              positive=True)
    kw["delta_omega_ph_per_s"] = num("photon", "delta_omega_ph_per_s",
                                     positive=True)
    kw["carrier_offset_per_s"] = num("photon", "carrier_offset_per_s", 0.0)
    kw["grid_span_factor"] = num("photon", "grid_span_factor", 25.0,
                                 positive=True)
    gp = num("photon", "grid_points", 4096.0, positive=True)
    if gp is not None:
        if gp != int(gp) or int(gp) < 128:
            ln = values.get(("photon", "grid_points"), (0, ""))[0]
            errors.append(f"line {ln}: grid_points must be an integer >= 128")
        else:
            kw["grid_points"] = int(gp)
    kw["theta1_rad"] = num("pulses", "theta1_rad", float(np.pi), nonneg=True)
    kw["theta2_rad"] = num("pulses", "theta2_rad", float(np.pi), nonneg=True)
    if ("pulses", "duration_s") in values:
        ln, raw = values[("pulses", "duration_s")]
        if raw.lower() == "auto":
            kw["duration_s"] = None
        else:
            kw["duration_s"] = num("pulses", "duration_s", positive=True)
    kw["t1_s"] = num("pulses", "t1_s", 2.0e-8, positive=True)
    kw["t2_s"] = num("pulses", "t2_s", 4.0e-8, positive=True)
    kw["phi1_rad"] = num("pulses", "phi1_rad", 0.0)
    kw["phi2_rad"] = num("pulses", "phi2_rad", 0.0)

    if ("medium", "alpha_convention") in values:
        ln, raw = values[("medium", "alpha_convention")]
        if raw not in ("amplitude", "intensity"):
            errors.append(f"line {ln}: alpha_convention must be 'amplitude' "
                          f"or 'intensity', got {raw!r}")
        else:
            kw["alpha_convention"] = raw
    if ("echo", "bracket") in values:
        ln, raw = values[("echo", "bracket")]
        if raw not in ("exact", "paper"):
            errors.append(f"line {ln}: bracket must be 'exact' or 'paper'")
        else:
            kw["bracket"] = raw

    parsed_axes = []
    for ln, raw in axes:
        parts = raw.split()
        if len(parts) != 4:
            errors.append(f"line {ln}: sweep axis needs 'name min max count'")
            continue
        name, lo_s, hi_s, n_s = parts
        if name not in SWEEPABLE:
            errors.append(f"line {ln}: cannot sweep {name!r} "
                          f"(choose from {', '.join(SWEEPABLE)})")
            continue
        try:
            lo, hi, n = float(lo_s), float(hi_s), int(n_s)
        except ValueError:
            errors.append(f"line {ln}: sweep bounds/count not numeric")
            continue
        if n < 1:
            errors.append(f"line {ln}: sweep count must be >= 1")
            continue
        if n >= 2 and not hi > lo:
            errors.append(f"line {ln}: sweep needs max > min for count >= 2")
            continue
        parsed_axes.append(SweepAxis(name, lo, hi, n))
    if len(parsed_axes) > 2:
        errors.append("at most two sweep axes are supported")

    tv = {k: v for k, v in kw.items() if v is not None or k == "duration_s"}
    if kw.get("t1_s") and kw.get("t2_s") and kw["t2_s"] <= kw["t1_s"]:
        errors.append("t2_s must be greater than t1_s")
    if errors:
        raise ConfigError(errors)
    tv["axes"] = tuple(parsed_axes)
    return ExperimentConfig(**tv)
