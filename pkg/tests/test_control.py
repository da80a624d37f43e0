import math

import numpy as np
import pytest

from echomem.control import (ControlPulse, StoragePhase, flat_filter_duration,
                             residual_factor, spin_wave, storage_survival,
                             transfer_factor)
from echomem.mapping import Medium, PhotonState, atomic_amplitude
from echomem.numerics import FrequencyGrid
from echomem.oracle import integrate_pulse


def pulse(theta=math.pi, duration=1.0, **kw):
    return ControlPulse(theta=theta, duration=duration, **kw)


class TestResidualFactor:
    def test_no_pulse(self):
        assert residual_factor(pulse(theta=0.0), 5e8) == pytest.approx(1.0)

    def test_pi_pulse_on_resonance(self):
        # complete transfer off the optical transition
        assert residual_factor(pulse(), 0.0) == 0.0

    def test_detuned_matches_ode(self):
        # theta=pi, delta T = 3
        p = pulse(duration=1.0)
        closed = abs(residual_factor(p, 3.0))
        b1, _ = integrate_pulse(1.0, 0.0, p, 3.0)
        assert abs(abs(b1) - closed) < 1e-6

    def test_conjugate_symmetry(self):
        p = pulse(theta=1.3)
        for d in (0.4, 1.7, 6.2):
            assert residual_factor(p, d) == pytest.approx(
                np.conj(residual_factor(p, -d)), rel=1e-12)


class TestTransferFactor:
    def test_resonant_pi_pulse(self):
        assert transfer_factor(pulse(), 0.0) == pytest.approx(1.0)

    def test_two_pi_pulse_zero(self):
        for d in (0.0, 1e8, -3e9):
            assert transfer_factor(pulse(theta=2 * math.pi), d) == pytest.approx(
                0.0, abs=1e-15)

    def test_selection_scale(self):
        # delta = 2/(pi T): the spectral-selection corner, 1/cosh(1)
        T = 2.5e-9
        p = pulse(duration=T)
        assert transfer_factor(p, 2 / (math.pi * T)) == pytest.approx(
            1 / math.cosh(1.0), rel=1e-12)
        assert transfer_factor(p, 2 / (math.pi * T)) == pytest.approx(
            0.6480543, rel=1e-6)

    def test_even_in_delta(self):
        p = pulse(theta=2.1)
        d = np.array([1e8, 5e8, 3e9])
        assert np.allclose(transfer_factor(p, d), transfer_factor(p, -d))


class TestUnitarity:
    def test_probability_split(self):
        # |r|^2 + |t|^2 <= 1 + 1e-9 everywhere; equality on resonance
        thetas = np.linspace(0.1, 2 * math.pi, 17)
        dts = np.array([0.0, 0.3, 1.0, 2.5, 6.0])
        for th in thetas:
            p = pulse(theta=float(th))
            for dt in dts:
                r2 = abs(residual_factor(p, dt)) ** 2
                t2 = transfer_factor(p, dt) ** 2
                assert r2 + t2 <= 1.0 + 1e-9
            assert (abs(residual_factor(p, 0.0)) ** 2
                    + transfer_factor(p, 0.0) ** 2) == pytest.approx(1.0, abs=1e-6)


class TestStorageSurvival:
    def test_ideal(self):
        assert storage_survival(0.0) == 1.0
        assert storage_survival(1e-3) == 1.0
        with pytest.raises(ValueError):
            storage_survival(-1.0)


class TestSpinWave:
    @pytest.fixture
    def setup(self):
        m = Medium.lorentzian(1.0, 1e9, 1.0)
        grid = FrequencyGrid.symmetric(25e9, 4096)
        p = PhotonState.lorentzian(2e8, grid, carrier=m.omega31)
        return m, p

    def test_lossless_transfer_at_center(self, setup):
        m, p = setup
        pl = pulse(duration=flat_filter_duration(25e9, m))
        assert abs(spin_wave(m, p, pl, 0.0, 0.0)) == pytest.approx(
            abs(atomic_amplitude(m, p, 0.0, 0.0)), rel=1e-9)

    def test_half_pi_pulse_ratio(self, setup):
        m, p = setup
        pl = pulse(theta=math.pi / 2, duration=flat_filter_duration(25e9, m))
        ratio = abs(spin_wave(m, p, pl, 0.0, 0.3)
                    / atomic_amplitude(m, p, 0.0, 0.3))
        assert ratio == pytest.approx(math.sin(math.pi / 4), rel=1e-9)

    def test_magnitude_independent_of_timing(self, setup):
        # storage time and pulse phase enter as pure phases
        m, p = setup
        pl = pulse(duration=1e-11)
        d, z = 4e8, 0.42
        mags = []
        for t1, phi in ((1e-8, 0.0), (5e-8, 1.3), (2e-7, -2.0)):
            st = StoragePhase(m, t1=t1, t2=t1 + 1e-8, phi1=phi)
            mags.append(abs(spin_wave(m, p, pl, d, z, storage=st)))
        assert mags[0] == mags[1] == mags[2]

    def test_phase_factors_unit_magnitude(self, setup):
        m, _ = setup
        st = StoragePhase(m, t1=2e-8, t2=4e-8, phi1=0.4, phi2=-1.1)
        d = np.linspace(-3e9, 3e9, 11)
        assert np.allclose(np.abs(np.exp(1j * st.mu1(d, 0.37))), 1.0)
        assert np.allclose(np.abs(np.exp(1j * st.psi(d, 0.37))), 1.0)
        assert st.phi_se() == pytest.approx(
            m.omega32 * 2e-8 - m.omega32 * 4e-8 + (-1.1 - 0.4))
