"""Assembled friction forces and the reduced/Gaussian unit boundary.

Everything upstream works in reduced units (hbar = c = kB = 1, lengths in
a chosen scale). This module assembles the exported forces for each
geometry regime, carries every intermediate factor in the report so the
result can be recomputed by hand, and converts whole reports between
reduced and Gaussian CGS units through dimension-exponent bookkeeping.
"""

from dataclasses import dataclass, replace

import numpy as np

from magfriction import geometry_coupling, materials_spectral
from magfriction.response_kinetics import DeltaCoefficient, OscState

REGIMES = ("pair-sharp", "pair-smoothed", "plane", "plane-sharp", "slabs-finite-T", "slabs-zero-T")

# (energy, length, time) exponents for each report entry
_FORCE_DIM = {
    "pair-sharp": (1, -1, -1),
    "plane-sharp": (1, -1, -1),
    "pair-smoothed": (1, -1, 0),
    "plane": (1, -1, 0),
    "slabs-finite-T": (1, -3, 0),
    "slabs-zero-T": (1, -3, 0),
}
_INTERMEDIATE_DIM = {
    "G": (0, -10, 2),
    "G_h": (0, -8, 2),
    "G_P": (0, -14, 2),
    "G_xx": (0, -8, 2),
    "G_xy": (0, -8, 2),
    "G_xz": (0, -8, 2),
    "G_yy": (0, -8, 2),
    "G_yz": (0, -8, 2),
    "G_zz": (0, -8, 2),
    "G_factor": None,  # dimension follows the regime, set on use
    "H": (2, 6, 0),
    "H0": (1, 6, -1),
    "H_P": (1, 6, 3),
    "I": (0, 0, 0),
    "suppression": (0, 0, 0),
    "reference_force": (1, -3, 0),
    "delta_prefactor": (-1, 0, -2),
}
_G_FACTOR_DIM = {
    "pair-smoothed": (0, -8, 2),
    "plane": (0, -8, 2),
    "slabs-finite-T": (0, -10, 2),
    "slabs-zero-T": (0, -14, 2),
}

CGS_HBAR = 1.0545718e-27  # erg s
CGS_C = 2.99792458e10  # cm/s
CGS_KB = 1.380649e-16  # erg/K


@dataclass(frozen=True)
class UnitContext:
    """Anchors tying reduced quantities to Gaussian CGS values.

    hbar, c, k_B are the numerical constants of the physical system;
    length_scale is the centimeter value of one reduced length unit, and
    frequency_scale must equal c/length_scale (one reduced time unit is
    length_scale/c).
    """

    hbar: float = 1.0
    c: float = 1.0
    k_B: float = 1.0
    length_scale: float = 1.0
    frequency_scale: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "c", "k_B", "length_scale", "frequency_scale"):
            if getattr(self, name) <= 0.0:
                raise ValueError("%s must be positive" % name)
        if abs(self.frequency_scale * self.length_scale / self.c - 1.0) > 1e-12:
            raise ValueError("frequency_scale must equal c/length_scale")

    @classmethod
    def reduced(cls):
        return cls()

    @classmethod
    def gaussian_cgs(cls, length_scale):
        """CGS context with one reduced length unit = length_scale cm."""
        return cls(CGS_HBAR, CGS_C, CGS_KB, length_scale, CGS_C / length_scale)

    @property
    def energy_scale(self):
        """erg per reduced energy unit: hbar*c/length_scale."""
        return self.hbar * self.c / self.length_scale

    @property
    def time_scale(self):
        """seconds per reduced time unit: length_scale/c."""
        return self.length_scale / self.c

    def factor(self, dim):
        """Physical value per reduced value for (energy, length, time)
        exponents dim."""
        e, l, t = dim
        return self.energy_scale**e * self.length_scale**l * self.time_scale**t

    def beta_from_kelvin(self, T_kelvin):
        """Reduced inverse temperature for a physical temperature."""
        if T_kelvin <= 0.0:
            raise ValueError("temperature must be positive")
        return self.energy_scale / (self.k_B * T_kelvin)

    def kelvin_from_beta(self, beta):
        if beta <= 0.0:
            raise ValueError("beta must be positive")
        return self.energy_scale / (self.k_B * beta)


@dataclass(frozen=True)
class FrictionReport:
    """One assembled force: regime tag, force value (real, or
    DeltaCoefficient for sharp pairs, or a tuple of them componentwise),
    the named intermediate factors, the input echo, and the unit system
    the numbers are in."""

    regime: str
    force: object
    intermediates: dict
    inputs: dict
    units: str = "reduced"

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError("unknown regime %r" % self.regime)
        if self.units not in ("reduced", "gaussian"):
            raise ValueError("units must be 'reduced' or 'gaussian'")


def _intermediate_dim(name, regime):
    dim = _INTERMEDIATE_DIM.get(name)
    if dim is None and name == "G_factor":
        dim = _G_FACTOR_DIM[regime]
    if dim is None:
        raise KeyError("no dimension registered for intermediate %r" % name)
    return dim


def _convert_report(report, units, direction):
    def conv(value, dim):
        f = units.factor(dim)
        return value * f if direction > 0 else value / f

    fdim = _FORCE_DIM[report.regime]
    force = report.force
    if isinstance(force, DeltaCoefficient):
        force = DeltaCoefficient(conv(force.amplitude, fdim), conv(force.at_frequency, (0, 0, -1)))
    elif isinstance(force, tuple):
        force = tuple(
            DeltaCoefficient(conv(c.amplitude, fdim), conv(c.at_frequency, (0, 0, -1)))
            for c in force
        )
    else:
        force = conv(force, fdim)
    inter = {
        name: conv(value, _intermediate_dim(name, report.regime))
        for name, value in report.intermediates.items()
    }
    return replace(
        report,
        force=force,
        intermediates=inter,
        units="gaussian" if direction > 0 else "reduced",
    )


def to_physical_units(report, units):
    """Convert a reduced-unit report to Gaussian physical units."""
    if report.units == "gaussian":
        return report
    return _convert_report(report, units, +1)


def to_reduced_units(report, units):
    """Convert a physical-unit report back to reduced units."""
    if report.units == "reduced":
        return report
    return _convert_report(report, units, -1)


def pair_force_sharp(geom, v, osc1, osc2, beta, hbar=1.0):
    r"""Sharp-oscillator pair force as componentwise delta amplitudes.

    Component l carries amplitude -G_lq v_q H (pi beta w1^2/2) against
    delta(w1 - w2), with H the thermal pair factor at polarizabilities
    1/(m_i w_i^2). Consistent with the closed-form single-amplitude route.

    Returns
    -------
    FrictionReport
        force is a tuple of three DeltaCoefficient records.
    """
    G = geometry_coupling.G_tensor(geom.r)
    v = np.asarray(v, dtype=np.float64)
    a1 = 1.0 / (osc1.mass * osc1.omega**2)
    a2 = 1.0 / (osc2.mass * osc2.omega**2)
    H = materials_spectral.thermal_H(osc1.omega, osc2.omega, a1, a2, beta, hbar)
    pref = np.pi * beta * osc1.omega**2 / 2.0
    gv = G @ v
    force = tuple(DeltaCoefficient(float(-gv[l] * H * pref), osc1.omega) for l in range(3))
    inter = {"H": H, "delta_prefactor": pref}
    for (i, j), name in zip(
        ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)),
        ("G_xx", "G_xy", "G_xz", "G_yy", "G_yz", "G_zz"),
    ):
        inter[name] = float(G[i, j])
    inputs = {
        "r_x": geom.r[0], "r_y": geom.r[1], "r_z": geom.r[2],
        "v_x": v[0], "v_y": v[1], "v_z": v[2],
        "omega1": osc1.omega, "omega2": osc2.omega,
        "mass1": osc1.mass, "mass2": osc2.mass, "beta": beta,
    }
    return FrictionReport("pair-sharp", force, inter, inputs)


def smoothed_forces(G_factor, v, H0, regime):
    """Generic smoothed force -G_factor*v*H0 for a precomputed geometric
    factor and thermal factor."""
    if regime not in _G_FACTOR_DIM:
        raise ValueError("regime %r is not a smoothed regime" % regime)
    force = -G_factor * v * H0
    return FrictionReport(
        regime,
        float(force),
        {"G_factor": G_factor, "H0": H0},
        {"v": v},
    )


def plane_force(g, v, spec1, spec2, beta, hbar=1.0):
    r"""Force on a particle moving parallel to a half-space surface.

    Smoothed spectra give F_h = -G_h v H0. A pair of sharp oscillator
    records instead gives the delta-amplitude form with prefactor
    pi beta w1^2/2 against the half-space factor.
    """
    G_h = geometry_coupling.G_halfspace(g)
    inputs = {"z0": g.z0, "rho": g.rho, "v": v, "beta": beta}
    if isinstance(spec1, OscState) and isinstance(spec2, OscState):
        a1 = 1.0 / (spec1.mass * spec1.omega**2)
        a2 = 1.0 / (spec2.mass * spec2.omega**2)
        H = materials_spectral.thermal_H(spec1.omega, spec2.omega, a1, a2, beta, hbar)
        pref = np.pi * beta * spec1.omega**2 / 2.0
        amp = -G_h * v * H * pref
        inputs.update({"omega1": spec1.omega, "omega2": spec2.omega})
        return FrictionReport(
            "plane-sharp",
            DeltaCoefficient(float(amp), spec1.omega),
            {"G_h": G_h, "H": H, "delta_prefactor": pref},
            inputs,
        )
    H0 = materials_spectral.smoothed_H0(spec1, spec2, beta, hbar)
    return FrictionReport(
        "plane", float(-G_h * v * H0), {"G_h": G_h, "H0": H0}, inputs
    )


def _slope(D):
    return D.D if hasattr(D, "D") else float(D)


def finite_T_slab_force(g, v, D1, D2, beta, units=None, hbar=1.0):
    r"""Finite-temperature friction per unit area between two slabs with
    linear spectral densities.

    Computed as suppression * reference with suppression = (d/(beta c
    hbar))^2 and reference the same expression with that factor removed:

        F = -(2 pi^6/15) (d/(beta c hbar))^2 rho1 rho2 D1 D2 hbar v/(beta^2 d^4)

    The product is checked internally against the assembly -G v H0 from
    the slab factor and the smoothed thermal factor.
    """
    d1, d2 = _slope(D1), _slope(D2)
    suppression = (g.d / (beta * hbar)) ** 2  # c = 1 internally
    reference = -(2.0 * np.pi**6 / 15.0) * g.rho1 * g.rho2 * d1 * d2 * hbar * v / (
        beta**2 * g.d**4
    )
    force = suppression * reference
    G = geometry_coupling.G_slabs_realspace(g)
    H0 = materials_spectral.smoothed_H0(
        materials_spectral.SpectralAmplitude(d1), materials_spectral.SpectralAmplitude(d2),
        beta, hbar,
    )
    assembled = -G * v * H0
    if force != 0.0 and abs(assembled - force) > 1e-12 * abs(force):
        raise AssertionError(
            "slab assembly mismatch: %.17g vs %.17g" % (assembled, force)
        )
    inter = {
        "G": G,
        "H0": H0,
        "I": materials_spectral.universal_I(),
        "suppression": suppression,
        "reference_force": reference,
    }
    inputs = {"d": g.d, "rho1": g.rho1, "rho2": g.rho2, "D1": d1, "D2": d2,
              "beta": beta, "v": v}
    report = FrictionReport("slabs-finite-T", float(force), inter, inputs)
    if units is not None:
        report = _echo_physical(report, units)
    return report


def zero_T_slab_force(g, v, D1, D2, units=None, hbar=1.0):
    r"""Zero-temperature friction per unit area between two slabs.

    Computed as suppression * reference with suppression = (v/c)^2:

        F_P = -(5 pi^2/(512 d^6)) (v/c)^2 rho1 rho2 D1 D2 (hbar v)^3

    Internally cross-checked against the dissipated-energy route
    -Delta E_P/(2 tau v) with Delta E_P = 2 tau H_P v^6 G_P, which must
    not depend on tau.
    """
    if v < 0.0:
        raise ValueError("v must be >= 0 in this regime")
    d1, d2 = _slope(D1), _slope(D2)
    suppression = v * v  # (v/c)^2 at c = 1
    reference = -(5.0 * np.pi**2 / (512.0 * g.d**6)) * g.rho1 * g.rho2 * d1 * d2 * (
        hbar * v
    ) ** 3
    force = suppression * reference
    H_P = (np.pi / 120.0) * hbar**3 * d1 * d2
    G_P = geometry_coupling.G_P_slabs(g)
    routes = []
    for tau in (1.0, 2.0):
        dE = 2.0 * tau * H_P * v**6 * G_P
        routes.append(-dE / (2.0 * tau * v) if v > 0.0 else 0.0)
    if routes[0] != routes[1]:
        raise AssertionError("tau failed to cancel: %r vs %r" % (routes[0], routes[1]))
    if force != 0.0 and abs(routes[0] - force) > 1e-12 * abs(force):
        raise AssertionError(
            "zero-T assembly mismatch: %.17g vs %.17g" % (routes[0], force)
        )
    inter = {
        "G_P": G_P,
        "H_P": H_P,
        "suppression": suppression,
        "reference_force": reference,
    }
    inputs = {"d": g.d, "rho1": g.rho1, "rho2": g.rho2, "D1": d1, "D2": d2, "v": v}
    report = FrictionReport("slabs-zero-T", float(force), inter, inputs)
    if units is not None:
        report = _echo_physical(report, units)
    return report


_INPUT_DIM = {
    "d": (0, 1, 0), "z0": (0, 1, 0),
    "r_x": (0, 1, 0), "r_y": (0, 1, 0), "r_z": (0, 1, 0),
    "rho": (0, -3, 0), "rho1": (0, -3, 0), "rho2": (0, -3, 0),
    "D1": (-1, 3, 0), "D2": (-1, 3, 0),
    "beta": (-1, 0, 0),
    "v": (0, 1, -1), "v_x": (0, 1, -1), "v_y": (0, 1, -1), "v_z": (0, 1, -1),
    "omega1": (0, 0, -1), "omega2": (0, 0, -1),
}


def _echo_physical(report, units):
    """Extend the input echo with Gaussian-unit values."""
    inputs = dict(report.inputs)
    for name, value in list(inputs.items()):
        dim = _INPUT_DIM.get(name)
        if dim is not None:
            inputs[name + "_cgs"] = value * units.factor(dim)
    if "beta" in report.inputs:
        inputs["temperature_kelvin"] = units.kelvin_from_beta(report.inputs["beta"])
    return replace(report, inputs=inputs)
