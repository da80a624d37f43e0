"""Stage 1: absorption of the single-photon wave packet.

The medium is an inhomogeneously broadened (Doppler) ensemble of three-level
atoms; the photon is resonant with the |1>-|3> optical transition.  The
complex absorption coefficient is the line-profile Cauchy transform scaled
by the absorption strength; propagating through length L multiplies each
spectral amplitude by exp(-alpha(u) L).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT, OMEGA31_DEFAULT
from .numerics import (FrequencyGrid, LineProfile, SpectralFunction,
                       cauchy_transform, lorentzian_profile, norm)

__all__ = ["Medium", "PhotonState", "absorption_coefficient", "transmit",
           "atomic_amplitude", "absorbed_probability"]


@dataclass(frozen=True)
class Medium:
    """Absorbing gas cell parameters.

    `alpha_center` is the line-center *amplitude* absorption coefficient,
    Re alpha(0) (cm^-1): intensity transmission at line center through
    length L is exp(-2 alpha_center L).  The figures' plotted "alpha" is
    interpreted this way by default; pass alpha_center = alpha/2 for the
    intensity-coefficient reading.  alpha0 = alpha_center * width is the
    strength in front of the Cauchy transform (cm^-1 s^-1).
    """

    profile: LineProfile
    alpha_center: float              # cm^-1
    length: float                    # cm
    omega31: float = OMEGA31_DEFAULT  # s^-1
    omega21: float = 1e10            # s^-1

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"medium length must be > 0, got {self.length}")
        if self.alpha_center < 0:
            raise ValueError("alpha_center must be >= 0")
        if not 0 < self.omega21 < self.omega31:
            raise ValueError("need 0 < omega21 << omega31")

    @property
    def alpha0(self) -> float:
        """alpha_center * Delta_n, the Cauchy-transform prefactor."""
        return self.alpha_center * self.profile.width

    @property
    def omega32(self) -> float:
        return self.omega31 - self.omega21

    @classmethod
    def lorentzian(cls, alpha_center: float, width: float, length: float,
                   omega31: float = OMEGA31_DEFAULT,
                   omega21: float = 1e10) -> "Medium":
        return cls(lorentzian_profile(width), alpha_center, length,
                   omega31, omega21)


@dataclass(frozen=True)
class PhotonState:
    """Single-photon wave packet, resonant carrier by default.

    `spectrum` holds the amplitude f over detuning u = omega_k - omega_ph.
    The standard packet has |f(u)|^2 Lorentzian of HWHM `width` and the
    causal phase f = sqrt(width/pi) / (width - i u) (sharp-front packet);
    the truncated grid leaves the norm within ~2e-2 of unity.
    """

    carrier: float                 # s^-1 (omega_ph)
    spectrum: SpectralFunction
    width: float                   # s^-1 (delta_omega_ph)

    def __post_init__(self):
        n = norm(self.spectrum)
        if abs(n - 1.0) > 2e-2:
            raise ValueError(
                f"photon spectrum norm {n:.4f} outside 1 +- 2e-2; "
                "widen the grid or renormalize")

    @classmethod
    def lorentzian(cls, width: float, grid: FrequencyGrid,
                   carrier: float = OMEGA31_DEFAULT,
                   renormalize: bool = True) -> "PhotonState":
        u = grid.points()
        vals = np.sqrt(width / np.pi) / (width - 1j * u)
        f = SpectralFunction(grid, vals)
        if renormalize:
            f = SpectralFunction(grid, vals / np.sqrt(norm(f)))
        return cls(carrier=carrier, spectrum=f, width=width)


def absorption_coefficient(medium: Medium, u, c: float = C_LIGHT):
    """Complex alpha(u) in cm^-1 at detuning u from line center.

    alpha(u) = alpha0 * K(u) with K the Cauchy transform of the profile;
    for the Lorentzian, alpha0 / (width - i u).  Re alpha >= 0 (absorption),
    Im alpha is the associated dispersion.
    """
    del c  # fixed by alpha_center normalization; kept for signature symmetry
    return medium.alpha0 * cauchy_transform(medium.profile, u)


def transmit(medium: Medium, photon: PhotonState) -> SpectralFunction:
    """Transmitted spectrum f(u) exp(-alpha(u) L) after the full cell."""
    u = photon.spectrum.grid.points()
    att = np.exp(-absorption_coefficient(medium, u) * medium.length)
    return SpectralFunction(photon.spectrum.grid, photon.spectrum.values * att)


def atomic_amplitude(medium: Medium, photon: PhotonState, delta, z):
    """Optical-coherence amplitude density b(delta, z) deposited by absorption.

    Normalized so that integral dDelta dz |b|^2 equals the absorbed
    probability exactly (the bare coupling prefactor is not independently
    fixed by alpha0, so this normalization pins it usefully):

        b(delta, z) = -i sqrt(2 pi alpha0 G(delta)) f(delta) exp(-alpha(delta) z)

    delta is the atom detuning from line center; the photon amplitude is
    read at the same detuning (resonant carrier).
    """
    d = np.asarray(delta, dtype=float)
    zz = np.asarray(z, dtype=float)
    if np.any(zz < 0) or np.any(zz > medium.length):
        raise ValueError("z outside the medium [0, L]")
    f = np.interp(d, photon.spectrum.grid.points(), photon.spectrum.values.real) \
        + 1j * np.interp(d, photon.spectrum.grid.points(), photon.spectrum.values.imag)
    dens = np.sqrt(2.0 * np.pi * medium.alpha0 * medium.profile.value(d))
    att = np.exp(-absorption_coefficient(medium, d) * zz)
    out = -1j * dens * f * att
    return out if np.ndim(out) else complex(out)


def absorbed_probability(medium: Medium, photon: PhotonState) -> float:
    """1 - transmitted fraction: norm is taken relative to the input norm."""
    n_in = norm(photon.spectrum)
    n_out = norm(transmit(medium, photon))
    return 1.0 - n_out / n_in
