"""Acceptance suite: the eight exit criteria at their stated tolerances.

Each test prints one pass/fail line (run with `pytest -s tests/test_acceptance.py`
to see them all).  Runtime budgets are asserted per criterion.
"""

import math
import time

import numpy as np
import pytest

from echomem.control import ControlPulse, flat_filter_duration
from echomem.echo import ProtocolSchedule, echo_spectrum, ideal_limit_spectrum
from echomem.mapping import Medium, PhotonState, absorbed_probability
from echomem.numerics import (FrequencyGrid, cauchy_transform,
                              cauchy_transform_quadrature, complex_gamma,
                              gauss_2f1_at_unity, gauss_2f1_series,
                              lorentzian_profile)


def _report(criterion: str, ok: bool, detail: str, elapsed: float,
            budget: float) -> None:
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"[{status}] {criterion}: {detail} ({elapsed:.2f}s / budget {budget:.0f}s)")
    assert ok, detail
    assert elapsed < budget, f"runtime {elapsed:.2f}s exceeds {budget}s budget"


def _fig_setup(alpha, dn, L, w21, dw, theta=math.pi):
    medium = Medium.lorentzian(alpha, dn, L, omega21=w21)
    grid = FrequencyGrid.symmetric(25 * max(dw, dn), 4096)
    photon = PhotonState.lorentzian(dw, grid, carrier=medium.omega31)
    dur = flat_filter_duration(abs(grid.stop), medium)
    pulses = (ControlPulse(theta, dur, time=2e-8, direction=+1),
              ControlPulse(theta, dur, time=4e-8, direction=-1))
    return medium, photon, pulses, ProtocolSchedule(t1=2e-8, t2=4e-8)


def test_criterion_1_fig3_anchor():
    """Fig. 3 total reconstruction probability = 0.23 +- 0.03.

    The plotted absorption coefficient is never tied to alpha_o in the
    source; both readings are evaluated and the matching one recorded, as
    the mapping module's open question prescribes.
    """
    t0 = time.perf_counter()
    probs = {}
    for conv, alpha_center in (("amplitude", 1.0), ("intensity", 0.5)):
        m, p, pulses, sched = _fig_setup(alpha_center, 1e9, 1.0, 1e10, 7e8)
        probs[conv] = echo_spectrum(m, p, pulses, sched).total_probability
    elapsed = time.perf_counter() - t0
    matching = min(probs, key=lambda k: abs(probs[k] - 0.23))
    ok = abs(probs[matching] - 0.23) <= 0.03
    _report("criterion 1 (Fig. 3 anchor)", ok,
            f"P(amplitude) = {probs['amplitude']:.4f}, "
            f"P(intensity) = {probs['intensity']:.4f}; "
            f"matching convention: {matching} "
            f"(|{probs[matching]:.4f} - 0.23| <= 0.03)", elapsed, 1.0)


def test_criterion_2_fig2_plateau():
    """Center ratio non-decreasing in L over [1, 4] cm, in [0.8, 1] at L=4.

    Non-decreasing is checked to 1e-3 per step: the exact retrieval bracket
    carries a genuine interference ripple exp(-2 alpha L) cos(2 w21 L / c)
    of a few 1e-4 on the plateau.
    """
    t0 = time.perf_counter()
    m, p, pulses, sched = _fig_setup(1.0, 1e9, 1.0, 1e10, 2e8)
    u = p.spectrum.grid.points()
    lengths = np.linspace(1.0, 4.0, 31)
    from dataclasses import replace
    r0 = []
    for L in lengths:
        echo = echo_spectrum(replace(m, length=float(L)), p, pulses, sched)
        r0.append(float(np.interp(0.0, u, echo.ratio_curve)))
    elapsed = time.perf_counter() - t0
    diffs = np.diff(r0)
    ok = bool(np.all(diffs >= -1e-3) and 0.8 <= r0[-1] <= 1.0)
    _report("criterion 2 (Fig. 2 plateau)", ok,
            f"center ratio {r0[0]:.4f} -> {r0[-1]:.4f}, "
            f"min step {diffs.min():+.2e} (>= -1e-3), "
            f"ratio(L=4) in [0.8, 1.0]", elapsed, 5.0)


def test_criterion_3_fig3_asymmetry():
    """max |ratio(+D) - ratio(-D)| > 0.02 at Fig. 3 parameters.

    The dispersive asymmetry lives in the published closed form (one-pass
    complex alpha L in the retrieval bracket); evaluated as printed.
    """
    t0 = time.perf_counter()
    m, p, pulses, sched = _fig_setup(1.0, 1e9, 1.0, 1e10, 7e8)
    echo = echo_spectrum(m, p, pulses, sched, bracket="paper")
    u = p.spectrum.grid.points()
    d = np.linspace(-2.1e9, 2.1e9, 401)
    ratio = (np.interp(-d, u, np.abs(echo.spectrum.values) ** 2)
             / np.interp(0.0, u, np.abs(p.spectrum.values) ** 2))
    asym = float(np.max(np.abs(ratio - ratio[::-1])))
    elapsed = time.perf_counter() - t0
    _report("criterion 3 (Fig. 3 asymmetry)", asym > 0.02,
            f"max |ratio(+D) - ratio(-D)| = {asym:.4f} > 0.02", elapsed, 1.0)


def test_criterion_4_ideal_limit():
    """w21=1e8, L=10, alpha=1: echo converges to the mirrored input."""
    t0 = time.perf_counter()
    m, p, pulses, sched = _fig_setup(1.0, 1e9, 10.0, 1e8, 2e8)
    echo = echo_spectrum(m, p, pulses, sched)
    ideal = ideal_limit_spectrum(p, sched, m)
    dev = float(np.max(np.abs(np.abs(echo.spectrum.values)
                              - np.abs(ideal.values))))
    prob = echo.total_probability
    absorbed = absorbed_probability(m, p)
    elapsed = time.perf_counter() - t0
    ok = dev <= 1e-2 and prob >= 0.97 and prob <= absorbed + 0.02
    _report("criterion 4 (ideal-limit convergence)", ok,
            f"max pointwise deviation = {dev:.2e} <= 1e-2, "
            f"P = {prob:.4f} >= 0.97 (absorbed {absorbed:.4f})", elapsed, 1.0)


def test_criterion_5_rosen_zener_oracle():
    """ODE integration matches |residual| and |transfer| to 1e-6."""
    from echomem.checks import check_pulse_stage
    t0 = time.perf_counter()
    rep = check_pulse_stage()
    elapsed = time.perf_counter() - t0
    _report("criterion 5 (Rosen-Zener oracle)", rep.passed,
            f"max residual dev {rep.values['residual']:.1e}, "
            f"transfer dev {rep.values['transfer']:.1e} (tol 1e-6), "
            f"unitarity {rep.values['unitarity']:.1e} (tol 1e-9)",
            elapsed, 1.0)


def test_criterion_6_absorption_oracle():
    """400 stratified atoms / 512 modes vs the closed-form spectrum."""
    from echomem.checks import check_absorption_stage
    t0 = time.perf_counter()
    rep = check_absorption_stage()
    elapsed = time.perf_counter() - t0
    _report("criterion 6 (absorption oracle)", rep.passed,
            f"transmitted-spectrum RMS = {rep.values['rms']:.4f} (tol 0.02), "
            f"norm drift = {rep.values['drift']:.1e} (tol 1e-8)",
            elapsed, 60.0)


def test_criterion_7_retrieval_oracle():
    """Backward retrieval vs the echo formula; forward control suppressed."""
    from echomem.checks import check_retrieval_stage
    t0 = time.perf_counter()
    rep = check_retrieval_stage()
    elapsed = time.perf_counter() - t0
    _report("criterion 7 (retrieval oracle)", rep.passed,
            f"echo-magnitude RMS = {rep.values['rms']:.4f} (tol 0.05), "
            f"forward/backward = {rep.values['leak']:.4f} (tol 0.10), "
            f"echo-peak timing dev = {rep.values['timing']:.2f} (tol 0.30)",
            elapsed, 120.0)


def test_criterion_8_special_functions():
    """Gamma recurrence/reflection, 2F1 vs series, Cauchy vs PV quadrature."""
    t0 = time.perf_counter()
    # gamma recurrence, 1000 points in |Re| <= 10, |Im| <= 50
    rng = np.random.default_rng(20260809)
    worst_rec = 0.0
    count = 0
    while count < 1000:
        z = complex(rng.uniform(-10, 10), rng.uniform(-50, 50))
        if z.real < 0.7 and abs(z.imag) < 1e-2:
            continue
        rel = abs(complex_gamma(z + 1) - z * complex_gamma(z)) \
            / abs(complex_gamma(z + 1))
        worst_rec = max(worst_rec, rel)
        count += 1
    ok_rec = worst_rec < 1e-9
    # reflection identity
    worst_ref = max(
        abs(abs(complex_gamma(0.5 + 1j * y)) ** 2 - math.pi / math.cosh(math.pi * y))
        / (math.pi / math.cosh(math.pi * y))
        for y in np.linspace(-4, 4, 33))
    ok_ref = worst_ref < 1e-8
    # 2F1 Gauss formula vs the direct series oracle
    worst_f21 = max(
        abs(gauss_2f1_at_unity(a, b, c) - gauss_2f1_series(a, b, c))
        for a, b, c in ((0.25, -0.25, 0.5 + 0.5j), (0.5, -0.5, 0.5 + 1.5j),
                        (0.1, 0.2, 1.3), (0.45, -0.45, 0.5 + 0.25j)))
    ok_f21 = worst_f21 < 1e-8
    # Cauchy transform: linear-in-eps convergence of the PV quadrature
    prof = lorentzian_profile(1e9)
    ok_pv = True
    ratios = []
    for u in (0.0, 1e9):
        exact = cauchy_transform(prof, u)
        errs = [abs(cauchy_transform_quadrature(prof, u, eps) - exact)
                for eps in (1e6, 1e5, 1e4)]
        ratios.append((errs[1] / errs[0], errs[2] / errs[1]))
        ok_pv = ok_pv and errs[0] > errs[1] > errs[2]
        ok_pv = ok_pv and all(0.03 < r < 0.3 for r in ratios[-1])
    elapsed = time.perf_counter() - t0
    ok = ok_rec and ok_ref and ok_f21 and ok_pv
    _report("criterion 8 (special functions)", ok,
            f"recurrence {worst_rec:.1e} (tol 1e-9), "
            f"reflection {worst_ref:.1e} (tol 1e-8), "
            f"2F1 vs series {worst_f21:.1e} (tol 1e-8), "
            f"PV eps-ratios {[f'{a:.2f}/{b:.2f}' for a, b in ratios]} (linear)",
            elapsed, 5.0)
