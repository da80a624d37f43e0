"""Stage 2: sech-pulse population transfer (Rosen-Zener) and storage phases.

A control pulse Omega(t) = Omega_0 sech(t/T) on the |3>-|2> transition has
an exact two-level solution.  Two numbers summarize it for each atom class
of control detuning delta:

  residual_factor  -- multiplies the optical coherence left on |3>:
                      2F1(theta/2pi, -theta/2pi; 1/2 + i delta T/2; 1)
  transfer_factor  -- spectral filter on the spin-wave amplitude:
                      sin(theta/2) / cosh(pi delta T / 2)

with pulse area theta = pi Omega_0 T.  The optical detuning Delta of an
atom maps to its control detuning via delta = (omega32/omega31) Delta: both
originate in the same atomic velocity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mapping import Medium, PhotonState, atomic_amplitude
from .numerics import gauss_2f1_at_unity

__all__ = ["ControlPulse", "StoragePhase", "residual_factor",
           "transfer_factor", "spin_wave", "storage_survival",
           "flat_filter_duration"]


@dataclass(frozen=True)
class ControlPulse:
    """Sech-shaped control pulse on |3>-|2>.

    theta = pi Omega_0 T is the pulse area; direction +1 propagates with
    the input photon, -1 against it.  carrier defaults to omega32 (set by
    the consuming operation when None).
    """

    theta: float                 # rad
    duration: float              # s
    time: float = 0.0            # s, pulse peak at z = 0
    carrier: float | None = None  # s^-1; None -> omega32 of the medium
    direction: int = +1
    phase: float = 0.0           # rad

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("pulse duration must be > 0")
        if self.theta < 0:
            raise ValueError("pulse area must be >= 0")
        if self.direction not in (+1, -1):
            raise ValueError("direction must be +1 (forward) or -1 (backward)")


def flat_filter_duration(max_detuning: float, medium: Medium,
                         margin: float = 10.0) -> float:
    """Duration T making the sech filter flat across +-max_detuning.

    Chooses 2/(pi T) = margin * max_detuning * (omega32/omega31) so that
    transfer_factor stays within ~0.5% of sin(theta/2) over the band.
    """
    scale = medium.omega32 / medium.omega31
    return 2.0 / (math.pi * margin * max_detuning * scale)


def residual_factor(pulse: ControlPulse, delta) -> complex:
    """Factor left on the optical coherence after the pulse.

    Position- and time-independent; exactly 0 at theta = pi, delta = 0
    (complete transfer off |3>).
    """
    a = pulse.theta / (2.0 * math.pi)
    c = 0.5 + 0.5j * delta * pulse.duration
    return gauss_2f1_at_unity(a, -a, c)


def transfer_factor(pulse: ControlPulse, delta) -> float:
    """sin(theta/2) / cosh(pi delta T / 2), the spin-wave spectral filter."""
    d = np.asarray(delta, dtype=float)
    s = math.sin(pulse.theta / 2.0)
    if abs(math.remainder(pulse.theta, 2.0 * math.pi)) < 1e-12:
        s = 0.0  # exact zero structure at theta in {0, 2 pi, ...}
    with np.errstate(over="ignore"):
        out = s / np.cosh(np.pi * d * pulse.duration / 2.0)
    return out if out.ndim else float(out)


def storage_survival(duration: float) -> float:
    """Spin-wave survival over the storage interval.

    The model assumes storage far inside the |2> lifetime, so this is
    identically 1; the hook exists for plugging in decoherence later.
    """
    if duration < 0:
        raise ValueError("storage duration must be >= 0")
    return 1.0


@dataclass(frozen=True)
class StoragePhase:
    """Closed-form phase bookkeeping for the storage interval.

    Pure phases only: applying them never changes a magnitude.  Velocities
    enter through v/c = Delta/omega31.
    """

    medium: Medium
    t1: float
    t2: float
    phi1: float = 0.0
    phi2: float = 0.0

    def phi_se(self, omega1: float | None = None,
               omega2: float | None = None) -> float:
        """phi_se = omega1 t1 - omega2 t2 + phi21."""
        w1 = self.medium.omega32 if omega1 is None else omega1
        w2 = self.medium.omega32 if omega2 is None else omega2
        return w1 * self.t1 - w2 * self.t2 + (self.phi2 - self.phi1)

    def mu1(self, delta, z, c_light: float | None = None) -> np.ndarray:
        """Phase accumulated through pulse 1 and storage for atom class delta.

        mu1 = omega1 t1 - phi1 - omega32 (1 + v/c) t1 + dmu1(z), with
        dmu1 = omega31 (1 + v/c) z/c - omega32 (1 + v/c) z/c  (forward pulse).
        """
        from .constants import C_LIGHT
        c = C_LIGHT if c_light is None else c_light
        m = self.medium
        v_over_c = np.asarray(delta, dtype=float) / m.omega31
        w1 = m.omega32
        dmu1 = (m.omega31 * (1.0 + v_over_c) * z / c
                - m.omega32 * (1.0 + v_over_c) * z / c)
        return w1 * self.t1 - self.phi1 - m.omega32 * (1.0 + v_over_c) * self.t1 + dmu1

    def psi(self, delta, z, c_light: float | None = None) -> np.ndarray:
        """Rephasing phase Psi(t1, t2; z) for the echo source term."""
        from .constants import C_LIGHT
        c = C_LIGHT if c_light is None else c_light
        m = self.medium
        v_over_c = np.asarray(delta, dtype=float) / m.omega31
        return (m.omega32 * (self.t2 - self.t1)
                - (2.0 * m.omega32 - m.omega31) * z / c
                + v_over_c * (m.omega31 * z / c - m.omega32 * (self.t1 + self.t2))
                + self.phi_se())


def spin_wave(medium: Medium, photon: PhotonState, pulse1: ControlPulse,
              delta, z, storage: StoragePhase | None = None):
    """Spin-wave amplitude density xi(Delta, z) after the first pulse.

    xi = b(Delta, z) * transfer_factor(pulse1, delta_c) * exp(i mu1), with
    the control detuning delta_c = (omega32/omega31) Delta.  The storage
    phase changes nothing in magnitude; omit `storage` to drop it.
    """
    d = np.asarray(delta, dtype=float)
    delta_c = (medium.omega32 / medium.omega31) * d
    b = atomic_amplitude(medium, photon, d, z)
    t = transfer_factor(pulse1, delta_c)
    out = b * t
    if storage is not None:
        out = out * np.exp(1j * storage.mu1(d, z))
    return out if np.ndim(out) else complex(out)
