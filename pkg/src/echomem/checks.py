"""Oracle-vs-closed-form verification fixtures.

Shared by the `oracle-check` CLI subcommand and the acceptance suite so the
tolerances live in exactly one place.  Each check returns a CheckReport
with one printable line per comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C_LIGHT
from .control import ControlPulse, residual_factor, transfer_factor
from .echo import ProtocolSchedule, echo_spectrum
from .mapping import Medium, PhotonState, absorption_coefficient
from .numerics import FrequencyGrid, SpectralFunction, norm
from .oracle import (DiscretizedEnsemble, ModeGrid, OracleConfig,
                     integrate_absorption, integrate_pulse,
                     run_protocol_oracle)

__all__ = ["CheckReport", "check_pulse_stage", "check_absorption_stage",
           "check_retrieval_stage", "RZ_TOL", "RZ_UNITARITY_TOL",
           "ABSORPTION_RMS_TOL", "NORM_DRIFT_TOL", "RETRIEVAL_RMS_TOL",
           "FORWARD_LEAK_TOL", "ECHO_TIMING_TOL"]

RZ_TOL = 1e-6              # |closed form| vs ODE magnitudes
RZ_UNITARITY_TOL = 1e-9    # |r|^2 + |t|^2 - 1
ABSORPTION_RMS_TOL = 0.02  # transmitted-spectrum RMS
NORM_DRIFT_TOL = 1e-8      # total-norm conservation
RETRIEVAL_RMS_TOL = 0.05   # echo-spectrum magnitude RMS
FORWARD_LEAK_TOL = 0.10    # forward-pulse echo / backward echo
ECHO_TIMING_TOL = 0.30     # relative deviation of the echo peak from tau


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    lines: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def add(self, label: str, ok: bool, detail: str) -> None:
        self.passed = self.passed and ok
        self.lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")


def check_pulse_stage(thetas=(math.pi / 2, math.pi, 2 * math.pi),
                      delta_ts=(0.0, 1.0, 3.0)) -> CheckReport:
    """Sech-pulse ODE vs hypergeometric residual / sech transfer factors."""
    rep = CheckReport("pulse")
    worst_r = worst_t = worst_u = 0.0
    for theta in thetas:
        pulse = ControlPulse(theta=theta, duration=1.0)
        for dt in delta_ts:
            r_cf = abs(residual_factor(pulse, dt))
            t_cf = abs(transfer_factor(pulse, dt))
            b1, x1 = integrate_pulse(1.0 + 0j, 0.0 + 0j, pulse, dt)
            worst_r = max(worst_r, abs(abs(b1) - r_cf))
            worst_t = max(worst_t, abs(abs(x1) - t_cf))
            worst_u = max(worst_u, abs(abs(b1) ** 2 + abs(x1) ** 2 - 1.0))
    rep.add("residual factor", worst_r < RZ_TOL,
            f"max |ODE - closed| = {worst_r:.2e} (tol {RZ_TOL:.0e})")
    rep.add("transfer factor", worst_t < RZ_TOL,
            f"max |ODE - closed| = {worst_t:.2e} (tol {RZ_TOL:.0e})")
    rep.add("unitarity", worst_u < RZ_UNITARITY_TOL,
            f"max ||U column|^2 - 1| = {worst_u:.2e} (tol {RZ_UNITARITY_TOL:.0e})")
    rep.values.update(residual=worst_r, transfer=worst_t, unitarity=worst_u)
    return rep


def _absorption_fixture(n_modes=512, n_z=1, n_delta=400):
    """Matched-parameter configuration for the transmitted-spectrum check.

    Optical depth and packet width keep the 400-atom comb an honest
    stand-in for the continuum over one packet-passage time; the wide mode
    span keeps the truncated Lorentzian tails (and their spatial ringing)
    out of the comparison.
    """
    medium = Medium.lorentzian(alpha_center=0.5, width=1e9, length=1.0)
    span = 2.4e10
    grid = FrequencyGrid.symmetric(span, n_modes)
    modes = ModeGrid(grid, +1)
    ens = DiscretizedEnsemble.stratified(medium, n_z, n_delta)
    photon = PhotonState.lorentzian(1e9, grid, carrier=medium.omega31)
    return medium, modes, ens, photon


def check_absorption_stage(n_modes=512, n_z=2, n_delta=200,
                           guard: float = 0.75) -> CheckReport:
    """400 stratified atoms / 512 modes against the closed-form spectrum."""
    rep = CheckReport("absorption")
    medium, modes, ens, photon = _absorption_fixture(n_modes, n_z, n_delta)
    res = integrate_absorption(ens, modes, photon, omega31=medium.omega31)
    u = modes.grid.points()
    pred = photon.spectrum.values * np.exp(
        -absorption_coefficient(medium, u) * medium.length)
    sel = np.abs(u) <= guard * abs(modes.grid.stop)
    rms = (np.linalg.norm(np.abs(res.transmitted.values[sel]) - np.abs(pred[sel]))
           / np.linalg.norm(pred[sel]))
    rep.add("transmitted spectrum", rms < ABSORPTION_RMS_TOL,
            f"RMS = {rms:.4f} (tol {ABSORPTION_RMS_TOL}) at "
            f"{ens.n_atoms} atoms / {n_modes} modes")
    rep.add("norm conservation", res.norm_drift < NORM_DRIFT_TOL,
            f"drift = {res.norm_drift:.2e} (tol {NORM_DRIFT_TOL:.0e})")
    rep.values.update(rms=rms, drift=res.norm_drift,
                      absorbed=res.atom_norm)
    return rep


def _retrieval_fixture(fast: bool = False) -> OracleConfig:
    medium = Medium.lorentzian(alpha_center=1.0, width=1e9, length=2.0,
                               omega21=1e10)
    if fast:
        return OracleConfig(medium=medium, photon_width=1e9, n_modes=256,
                            span=1.6e10, n_z=2, n_delta=100)
    return OracleConfig(medium=medium, photon_width=1e9, n_modes=512,
                        span=2.4e10, n_z=2, n_delta=200)


def check_retrieval_stage(fast: bool = False, guard: float = 0.75
                          ) -> CheckReport:
    """Chained oracle protocol vs the closed-form echo spectrum.

    Also runs the phase-matching control: flipping the second pulse to
    forward propagation must suppress the backward echo, and the echo pulse
    must peak about tau after the second pulse.
    """
    rep = CheckReport("retrieval")
    cfg = _retrieval_fixture(fast)
    m = cfg.medium
    res = run_protocol_oracle(cfg)

    # closed-form prediction on the same grid, same pulses
    span = cfg.resolved_span()
    grid = FrequencyGrid.symmetric(span, cfg.n_modes)
    photon = PhotonState.lorentzian(cfg.photon_width, grid, carrier=m.omega31)
    t1 = res.probe_times["pulse1"]
    t2 = res.probe_times["pulse2"]
    from .control import flat_filter_duration
    dur = cfg.pulse_duration or flat_filter_duration(span, m)
    pulses = (ControlPulse(cfg.theta1, dur, time=t1, direction=+1),
              ControlPulse(cfg.theta2, dur, time=t2, direction=-1))
    sched = ProtocolSchedule(t1=t1, t2=t2, tau=t1)
    pred = echo_spectrum(m, photon, pulses, sched, bracket="exact")

    u = grid.points()
    sel = np.abs(u) <= guard * span
    mag_o = np.abs(res.echo.spectrum.values[sel])
    mag_p = np.abs(pred.spectrum.values[sel])
    rms = np.linalg.norm(mag_o - mag_p) / np.linalg.norm(mag_p)
    rep.add("echo spectrum", rms < RETRIEVAL_RMS_TOL,
            f"magnitude RMS = {rms:.4f} (tol {RETRIEVAL_RMS_TOL})")

    drift = res.norm_drift
    rep.add("norm conservation", drift < NORM_DRIFT_TOL,
            f"drift = {drift:.2e} (tol {NORM_DRIFT_TOL:.0e})")

    # echo pulse timing: steepest growth of the backward field norm
    tr_t = res.echo.trace_times
    tr_n = res.echo.trace_field_norm
    growth = np.gradient(tr_n, tr_t)
    t_peak = tr_t[int(np.argmax(growth))]
    tau = res.probe_times["tau"]
    t_expected = res.probe_times["retrieval_start"] + tau
    rel = abs(t_peak - t_expected) / tau
    rep.add("echo timing", rel < ECHO_TIMING_TOL,
            f"peak at retrieval_start + {(t_peak - res.probe_times['retrieval_start']) * 1e9:.2f} ns, "
            f"tau = {tau * 1e9:.2f} ns, deviation {rel:.2f} (tol {ECHO_TIMING_TOL})")

    # forward-direction control run: no phase-matched backward buildup
    from dataclasses import replace
    res_fwd = run_protocol_oracle(replace(cfg, pulse2_direction=+1))
    leak = res_fwd.echo.probability / res.echo.probability
    rep.add("forward-pulse suppression", leak < FORWARD_LEAK_TOL,
            f"forward/backward echo = {leak:.4f} (tol {FORWARD_LEAK_TOL})")

    rep.values.update(rms=rms, drift=drift, leak=leak, timing=rel,
                      p_backward=res.echo.probability,
                      p_forward=res_fwd.echo.probability)
    return rep
