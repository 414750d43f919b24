"""Polarizability spectra, the Drude model, thermal factors, and I."""

import numpy as np
import pytest

from conftest import assert_check
from magfriction import verification
from magfriction.materials_spectral import (
    DrudeParams,
    LinearSpectralDensity,
    SpectralAmplitude,
    TabulatedSpectralDensity,
    drude_D,
    drude_epsilon,
    drude_polarizability_h,
    h_from_spectrum,
    smoothed_H0,
    spectrum_from_h,
    thermal_H,
    universal_I,
)


def test_h_sharp_line():
    # narrow tabulated spike of d(m^2)-weight w behaves as a point mass
    assert_check(verification.check_tabulated_sharp_line)


def test_h_linear_truncated_closed_form():
    D, m_max = 0.7, 30.0
    spec = LinearSpectralDensity(D, m_max=m_max)
    for K2 in (0.5, 1.0, 9.0):
        K = np.sqrt(K2)
        closed = 2.0 * D * (m_max - K * np.arctan(m_max / K))
        assert abs(spec.h(K2) - closed) <= 1e-10 * closed


def test_h_linear_requires_cutoff():
    with pytest.raises(ValueError):
        h_from_spectrum(SpectralAmplitude(1.0), 1.0)


def test_h_sum_rule():
    assert_check(verification.check_h_sum_rule)


def test_spectrum_round_trip():
    assert_check(verification.check_spectrum_round_trip)


def test_spectrum_from_real_h_vanishes():
    assert spectrum_from_h(lambda z: np.real(np.asarray(z)), 1.0) == 0.0


def test_drude_epsilon_values():
    p = DrudeParams(omega_p=1.0, nu=1.0, rho=1.0)
    assert drude_epsilon(p, 1.0) == 1.5
    assert abs(drude_epsilon(p, 1e8) - 1.0) <= 1e-15
    with pytest.raises(ValueError):
        drude_epsilon(p, 0.0)


def test_drude_epsilon_monotone():
    p = DrudeParams(omega_p=3.0, nu=0.2, rho=1.0)
    zetas = np.logspace(-2.0, 2.0, 20)
    eps = [drude_epsilon(p, z) for z in zetas]
    assert all(b < a for a, b in zip(eps, eps[1:]))


def test_drude_polarizability_limits():
    p = DrudeParams(omega_p=2.0, nu=0.5, rho=3.0)
    metal = 1.0 / (2.0 * np.pi * 3.0)
    assert abs(drude_polarizability_h(p, 1e-10) - metal) <= 1e-10
    assert abs(drude_polarizability_h(p, 1e8)) <= 1e-12
    # mid-range composition
    z = 0.8
    eps = drude_epsilon(p, z)
    assert drude_polarizability_h(p, z) == (eps - 1.0) / (eps + 1.0) / (2.0 * np.pi * 3.0)


def test_drude_D_values():
    assert drude_D(DrudeParams(omega_p=9.0, nu=0.0, rho=1.0)).D == 0.0
    d = drude_D(DrudeParams(omega_p=9.0, nu=0.1, rho=1.0)).D
    assert abs(d - 0.1 / (81.0 * np.pi**2)) <= 1e-18
    assert d == pytest.approx(1.2508e-4, rel=1e-4)


def test_drude_slope_extraction():
    assert_check(verification.check_drude_slope)


def test_thermal_H_values():
    assert abs(thermal_H(2.0, 2.0, 1.0, 1.0, 1.0) - 1.0 / np.sinh(1.0) ** 2) <= 1e-15
    assert thermal_H(2.0, 2.0, 1.0, 1.0, 100.0) <= 1e-40
    a = thermal_H(1.0, 2.5, 0.3, 0.9, 1.3)
    b = thermal_H(2.5, 1.0, 0.9, 0.3, 1.3)
    assert abs(a - b) <= 2e-16 * a


def test_universal_I_value():
    val = universal_I()
    assert val == 4.0 * np.pi**4 / 15.0
    assert val == pytest.approx(25.975757, abs=1e-6)


def test_universal_I_routes():
    assert_check(verification.check_universal_I_routes)


def test_universal_I_partial_sums_monotone():
    partial = np.cumsum(24.0 / np.arange(1.0, 200.0) ** 4)
    assert all(b > a for a, b in zip(partial, partial[1:]))
    assert partial[-1] < universal_I()


def test_smoothed_H0_closed_form():
    val = smoothed_H0(SpectralAmplitude(1.0), SpectralAmplitude(1.0), 1.0)
    assert abs(val - 8.0 * np.pi**5 / 15.0) <= 1e-13 * val
    # quartic beta scaling
    half = smoothed_H0(SpectralAmplitude(1.0), SpectralAmplitude(1.0), 2.0)
    assert half == val / 16.0


def test_smoothed_H0_quadrature_route():
    assert_check(verification.check_H0_quadrature)


def test_smoothed_H0_positive_and_decaying():
    s = SpectralAmplitude(0.3)
    vals = [smoothed_H0(s, s, b) for b in (0.5, 1.0, 4.0, 16.0)]
    assert all(v > 0.0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_tabulated_from_text(tmp_path):
    p = tmp_path / "spec.txt"
    p.write_text("# header comment\n0.0 0.0\n1.0 0.5\n2.0 1.0\n")
    spec = TabulatedSpectralDensity.from_text(p)
    assert spec.density(1.0) == 0.5


def test_tabulated_validation(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0.0 0.0\n1.0 -0.5\n")
    with pytest.raises(ValueError):
        TabulatedSpectralDensity.from_text(bad)
    nonmono = tmp_path / "nonmono.txt"
    nonmono.write_text("1.0 0.5\n0.5 0.2\n")
    with pytest.raises(ValueError):
        TabulatedSpectralDensity.from_text(nonmono)


def test_materials_suite_green():
    failures = [c.name for c in verification.SUITES["materials"] if not c.run()[0]]
    assert failures == []
