"""Casimir friction between a magnetic and a dielectric body.

Quasistatic dipole coupling, the coupled electric/magnetic oscillator pair,
imaginary-frequency free energies, sharp and thermally smoothed friction
kernels, and the geometric reduction factors for particle, half-space, and
parallel-slab configurations. Reduced units (hbar = c = kB = 1) everywhere
unless a UnitContext says otherwise.
"""

from magfriction._kernels import IMPL as kernel_impl

__version__ = "0.1.0"

__all__ = ["kernel_impl", "__version__"]
