"""Coupled oscillator pair: momenta, Hamiltonian, spectrum, dynamics."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import assert_check
from magfriction import verification
from magfriction.oscillator_pair import (
    OscPairConfig,
    PhaseState,
    eigenfrequencies,
    eom_rhs,
    generalized_momenta,
    ground_state_energy,
    hamiltonian,
    integrate_eom,
)

UNIT = OscPairConfig(alpha=0.3)


def test_momenta_decoupled():
    cfg = OscPairConfig(alpha=0.0)
    assert generalized_momenta(cfg, 0.4, -0.9, 1.0, 2.0) == (0.4, -0.9)


def test_momenta_coupled_example():
    cfg = OscPairConfig(alpha=1.0)
    assert generalized_momenta(cfg, 0.0, 0.0, 1.0, 1.0) == (-1.0, 1.0)


def test_legendre_round_trip():
    assert_check(verification.check_legendre_round_trip)


def test_hamiltonian_origin():
    assert hamiltonian(UNIT, PhaseState(0.0, 0.0, 0.0, 0.0)) == 0.0


def test_hamiltonian_decoupled_example():
    cfg = OscPairConfig(alpha=0.0)
    assert hamiltonian(cfg, PhaseState(1.0, 0.0, 0.0, 1.0)) == 1.0


def test_eom_rhs_trivials():
    cfg = OscPairConfig(alpha=0.0)
    assert np.array_equal(eom_rhs(cfg, (1.0, 0.0, 0.0, 0.0)), (0.0, 0.0, -1.0, 0.0))
    assert np.array_equal(eom_rhs(UNIT, (0.0, 0.0, 0.0, 0.0)), (0.0, 0.0, 0.0, 0.0))


def test_eom_rhs_coupling_terms():
    w = np.asarray(eom_rhs(OscPairConfig(alpha=0.5), (0.2, -0.4, 0.7, 0.3)))
    assert w[2] == -0.2 + 2.0 * 0.5 * 0.3
    assert w[3] == 0.4 - 2.0 * 0.5 * 0.7


def test_eigenfrequencies_values():
    assert eigenfrequencies(0.0) == (1.0, 1.0)
    assert eigenfrequencies(0.75) == (2.0, 0.5)
    wp, wm = eigenfrequencies(0.5)
    assert abs(wp - (0.5 + np.sqrt(1.25))) <= 1e-15
    assert abs(wm - (-0.5 + np.sqrt(1.25))) <= 1e-15


def test_eigenfrequencies_negative_alpha_rejected():
    with pytest.raises(ValueError):
        eigenfrequencies(-0.1)
    with pytest.raises(ValueError):
        ground_state_energy(-0.1)


def test_eigenfrequencies_match_linear_system():
    assert_check(verification.check_eigenfrequencies_oracle)


@given(st.floats(0.0, 10.0))
def test_product_unity_closed_form(alpha):
    wp, wm = eigenfrequencies(alpha)
    assert wp >= wm > 0.0
    assert abs(wp * wm - 1.0) <= 5e-13


@given(st.floats(0.0, 5.0))
def test_eigenfrequencies_vs_companion(alpha):
    wp, wm = eigenfrequencies(alpha)
    op, om = verification._companion_frequencies(alpha)
    assert abs(wp - op) <= 1e-12 * max(1.0, wp)
    assert abs(wm - om) <= 1e-12


def test_ground_state_values():
    assert ground_state_energy(0.0) == 1.0
    assert ground_state_energy(0.75) == 1.25


def test_ground_state_perturbative():
    # sqrt(1 + a^2) - 1 - a^2/2 is O(a^4) with coefficient -1/8
    for alpha in (1e-1, 1e-2, 1e-3):
        dev = ground_state_energy(alpha) - 1.0 - alpha**2 / 2.0
        assert abs(dev) <= 0.2 * alpha**4


def test_ground_state_monotone():
    alphas = np.linspace(0.0, 4.0, 40)
    e = [ground_state_energy(a) for a in alphas]
    assert all(b > a for a, b in zip(e, e[1:]))


def test_integrate_decoupled_cosine():
    tr = integrate_eom(OscPairConfig(alpha=0.0), (1.0, 0.0, 0.0, 0.0),
                       t_end=10.0, dt=1e-3)
    assert np.max(np.abs(tr.states[:, 0] - np.cos(tr.t))) <= 1e-10


def test_integrate_energy_drift_bound():
    # declared contract: relative drift <= 1e-8 over t_end = 1000 at dt = 1e-3
    cfg = OscPairConfig(alpha=0.8)
    tr = integrate_eom(cfg, (1.0, 0.3, 0.0, 0.0), t_end=1000.0, dt=1e-3, stride=100)
    e = 0.5 * np.sum(tr.states**2, axis=1)
    assert np.max(np.abs(e - e[0])) / e[0] <= 1e-8


def test_integrate_rejects_excessive_drift():
    with pytest.raises(RuntimeError):
        integrate_eom(UNIT, (1.0, 0.3, 0.0, 0.0), t_end=50.0, dt=0.8)


def test_trajectory_two_line_spectrum():
    wp, wm = verification.fit_trajectory_frequencies(0.75)
    assert abs(wp - 2.0) <= 1e-6
    assert abs(wm - 0.5) <= 1e-6
    assert abs(wp * wm - 1.0) <= 1e-6


def test_oscillator_suite_green():
    failures = [c.name for c in verification.SUITES["oscillator"] if not c.run()[0]]
    assert failures == []
