"""Geometric coupling tensors and their half-space/slab reductions.

The magnetodielectric coupling between volume elements is carried by an
antisymmetric kernel psi_ij ~ x_k eps_kij/r^3; its gradient T and the
contraction G = T.T control the friction. Closed forms for the particle
pair, particle/half-space, and parallel-slab geometries, the Fourier-route
duplicates used as consistency oracles, and the zero-temperature
sixth-moment factor. Internal c = 1.
"""

from dataclasses import dataclass

import numpy as np

from magfriction import _kernels, numerics

_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_i, _k, _j] = -1.0


@dataclass(frozen=True)
class PairGeometry:
    """Two point particles separated by r."""

    r: object

    def __post_init__(self):
        r = np.asarray(self.r, dtype=np.float64)
        if r.shape != (3,) or np.linalg.norm(r) == 0.0:
            raise ValueError("r must be a nonzero 3-vector")
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class PlaneGeometry:
    """Particle at height z0 above a half-space of density rho."""

    z0: float
    rho: float

    def __post_init__(self):
        if self.z0 <= 0.0 or self.rho <= 0.0:
            raise ValueError("z0 and rho must be positive")


@dataclass(frozen=True)
class SlabGeometry:
    """Two half-spaces with gap d and densities rho1, rho2."""

    d: float
    rho1: float
    rho2: float

    def __post_init__(self):
        if self.d <= 0.0 or self.rho1 <= 0.0 or self.rho2 <= 0.0:
            raise ValueError("d, rho1, rho2 must be positive")


def coupling_psi(r):
    """Coupling kernel psi_ij = x_k eps_kij/r^3, antisymmetric and
    traceless; equal to -grad_p(1/r) eps_pij."""
    r = np.asarray(r, dtype=np.float64)
    rn = np.linalg.norm(r)
    if rn == 0.0:
        raise ValueError("zero separation")
    return np.einsum("k,kij->ij", r, _EPS) / rn**3


def coupling_gradient_T(r):
    """Gradient of the coupling kernel:
    T_lij = (delta_lk/r^3 - 3 x_l x_k/r^5) eps_kij; scales as 1/r^3."""
    r = np.asarray(r, dtype=np.float64)
    rn = np.linalg.norm(r)
    if rn == 0.0:
        raise ValueError("zero separation")
    m = np.eye(3) / rn**3 - 3.0 * np.outer(r, r) / rn**5
    return np.einsum("lk,kij->lij", m, _EPS)


def G_tensor(r):
    """Contraction G_lq = T_lij T_qij = 2(delta_lq/r^6 + 3 x_l x_q/r^8),
    symmetric positive definite."""
    r = np.asarray(r, dtype=np.float64)
    rn = np.linalg.norm(r)
    if rn == 0.0:
        raise ValueError("zero separation")
    return 2.0 * (np.eye(3) / rn**6 + 3.0 * np.outer(r, r) / rn**8)


def G_halfspace(g):
    """Half-space reduction of G_xx: pi rho/(2 z0^3), the volume integral
    of G_xx weighted by the density over z > z0."""
    return np.pi * g.rho / (2.0 * g.z0**3)


def G_slabs_realspace(g):
    """Slab pair factor pi rho1 rho2/(4 d^2): the half-space factor
    integrated once more across the gap."""
    return np.pi * g.rho1 * g.rho2 / (4.0 * g.d**2)


def psi_hat(z0, q):
    """Transverse Fourier transform of the Coulomb kernel at height z0:
    2 pi exp(-q|z0|)/q."""
    if q <= 0.0:
        raise ValueError("q must be positive")
    return 2.0 * np.pi * np.exp(-q * abs(z0)) / q


def G_hat_q(d, q):
    """Fourier-space slab kernel (2 pi)^2 exp(-2 q d)/q^2: the double
    z-integral of 4 q^2 psi_hat^2 across a gap of width d."""
    if d <= 0.0 or q <= 0.0:
        raise ValueError("d and q must be positive")
    return (2.0 * np.pi) ** 2 * np.exp(-2.0 * q * d) / q**2


def G_slabs_fourier(g):
    r"""Slab pair factor assembled in Fourier space.

    (rho1 rho2/(2 pi)^2) Int q^2/2 * G_hat(q) 2 pi q dq over q > 0, with
    the q^2/2 from the in-plane average <k_x^2>. Equals the real-space
    route, pi rho1 rho2/(4 d^2), exactly.
    """
    q = numerics.quad_semi_infinite(
        lambda k: 0.5 * k**2 * G_hat_q(g.d, k) * 2.0 * np.pi * k,
        0.0,
        tol=1e-12,
        panel_scale=1.0 / g.d,
    )
    return g.rho1 * g.rho2 / (2.0 * np.pi) ** 2 * q.value


def angular_moment6():
    """Sixth angular moment: integral of cos^6 over a full turn, 5 pi/8."""
    return 5.0 * np.pi / 8.0


def G_P_slabs(g):
    """Zero-temperature slab factor 75 pi rho1 rho2/(64 d^6): the
    sixth-moment weighted Fourier integral in closed form."""
    return 75.0 * np.pi * g.rho1 * g.rho2 / (64.0 * g.d**6)


def mc_halfspace_Gxx(z0, n, seed, chunk_size=1 << 20):
    r"""Monte-Carlo volume integral of G_xx over the half-space z > z0.

    Importance-sampled (z density ~ z^-4, radial density matched to the
    r^-6 envelope); deterministic per (seed, n, chunk partition). The
    closed-form target is pi/(2 z0^3) per unit density.

    Returns
    -------
    McResult
    """
    if n <= 0:
        raise ValueError("n must be positive")
    sw = 0.0
    sw2 = 0.0
    done = 0
    j = 0
    while done < n:
        m = min(chunk_size, n - done)
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(j))
        u = rng.random((3, m))
        a, b = _kernels.halfspace_chunk(z0, u, 1)
        sw += a
        sw2 += b
        done += m
        j += 1
    mean = sw / n
    var = max(sw2 / n - mean * mean, 0.0)
    if n > 1:
        var *= n / (n - 1.0)
    return numerics.McResult(mean, float(np.sqrt(var / n)), n, seed)
