"""Pure numpy/Python kernel lane.

Same call signatures as the compiled lane in ``_core.pyx``; selected by
``magfriction._kernels`` when the extension is unavailable or when
MAGFRICTION_PURE is set. Results are deterministic within this lane but may
differ from the compiled lane in the last ulp (different reduction order).
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def _rk4_scalar(alpha, init, dt, n_steps, stride):
    # plain-float loop; beats numpy for a handful of columns
    n_out = n_steps // stride + 1
    B = init.shape[1]
    out = np.empty((n_out, 4, B))
    for b in range(B):
        a = float(alpha[b])
        h = float(dt[b])
        x, y, vx, vy = (float(init[i, b]) for i in range(4))
        out[0, :, b] = (x, y, vx, vy)
        k = 1
        for step in range(1, n_steps + 1):
            ax1 = -x + 2.0 * a * vy
            ay1 = -y - 2.0 * a * vx
            x2 = x + 0.5 * h * vx
            y2 = y + 0.5 * h * vy
            vx2 = vx + 0.5 * h * ax1
            vy2 = vy + 0.5 * h * ay1
            ax2 = -x2 + 2.0 * a * vy2
            ay2 = -y2 - 2.0 * a * vx2
            x3 = x + 0.5 * h * vx2
            y3 = y + 0.5 * h * vy2
            vx3 = vx + 0.5 * h * ax2
            vy3 = vy + 0.5 * h * ay2
            ax3 = -x3 + 2.0 * a * vy3
            ay3 = -y3 - 2.0 * a * vx3
            x4 = x + h * vx3
            y4 = y + h * vy3
            vx4 = vx + h * ax3
            vy4 = vy + h * ay3
            ax4 = -x4 + 2.0 * a * vy4
            ay4 = -y4 - 2.0 * a * vx4
            x += h / 6.0 * (vx + 2.0 * vx2 + 2.0 * vx3 + vx4)
            y += h / 6.0 * (vy + 2.0 * vy2 + 2.0 * vy3 + vy4)
            vx += h / 6.0 * (ax1 + 2.0 * ax2 + 2.0 * ax3 + ax4)
            vy += h / 6.0 * (ay1 + 2.0 * ay2 + 2.0 * ay3 + ay4)
            if step % stride == 0:
                out[k, :, b] = (x, y, vx, vy)
                k += 1
    return out


def rk4_batch(alpha, init, dt, n_steps, stride):
    r"""Fixed-step RK4 for the coupled pair, batched over columns.

    Integrates x' = vx, y' = vy, vx' = -x + 2*alpha*vy, vy' = -y - 2*alpha*vx
    (unit masses and frequencies) for ``n_steps`` steps of per-column size
    ``dt``, recording every ``stride``-th state.

    Parameters
    ----------
    alpha : array_like, shape (B,)
        Coupling per column.
    init : array_like, shape (4, B)
        Initial (x, y, vx, vy) per column.
    dt : array_like, shape (B,)
        Step size per column.
    n_steps : int
        Number of steps; must be a multiple of ``stride`` so the final state
        is recorded.
    stride : int
        Sampling stride in steps.

    Returns
    -------
    ndarray, shape (n_steps//stride + 1, 4, B)
        Sampled states, sample k taken at step k*stride.
    """
    alpha = np.ascontiguousarray(alpha, dtype=np.float64)
    init = np.ascontiguousarray(init, dtype=np.float64)
    dt = np.ascontiguousarray(dt, dtype=np.float64)
    if n_steps % stride != 0:
        raise ValueError("n_steps must be a multiple of stride")
    B = init.shape[1]
    if B <= 2:
        return _rk4_scalar(alpha, init, dt, n_steps, stride)
    n_out = n_steps // stride + 1
    out = np.empty((n_out, 4, B))
    x, y, vx, vy = (init[i].copy() for i in range(4))
    out[0] = init
    a2 = 2.0 * alpha
    k = 1
    for step in range(1, n_steps + 1):
        ax1 = -x + a2 * vy
        ay1 = -y - a2 * vx
        hh = 0.5 * dt
        x2 = x + hh * vx
        y2 = y + hh * vy
        vx2 = vx + hh * ax1
        vy2 = vy + hh * ay1
        ax2 = -x2 + a2 * vy2
        ay2 = -y2 - a2 * vx2
        x3 = x + hh * vx2
        y3 = y + hh * vy2
        vx3 = vx + hh * ax2
        vy3 = vy + hh * ay2
        ax3 = -x3 + a2 * vy3
        ay3 = -y3 - a2 * vx3
        x4 = x + dt * vx3
        y4 = y + dt * vy3
        vx4 = vx + dt * ax3
        vy4 = vy + dt * ay3
        ax4 = -x4 + a2 * vy4
        ay4 = -y4 - a2 * vx4
        h6 = dt / 6.0
        x = x + h6 * (vx + 2.0 * vx2 + 2.0 * vx3 + vx4)
        y = y + h6 * (vy + 2.0 * vy2 + 2.0 * vy3 + vy4)
        vx = vx + h6 * (ax1 + 2.0 * ax2 + 2.0 * ax3 + ax4)
        vy = vy + h6 * (ay1 + 2.0 * ay2 + 2.0 * ay3 + ay4)
        if step % stride == 0:
            out[k, 0] = x
            out[k, 1] = y
            out[k, 2] = vx
            out[k, 3] = vy
            k += 1
    return out


def mode_sum(alpha, beta, n_max, hbar=1.0):
    r"""Brute-force symmetric sum of per-mode free energies.

    Sum of (2*alpha^2/beta) * u^2/(u^2+1)^2 over modes n = -n_max..n_max with
    u = 2*pi*n/(beta*hbar); the n = 0 term vanishes.

    Returns
    -------
    float
    """
    if n_max <= 0:
        return 0.0
    n = np.arange(1, n_max + 1, dtype=np.float64)
    u2 = (TWO_PI * n / (beta * hbar)) ** 2
    terms = u2 / (u2 + 1.0) ** 2
    return float(2.0 * (2.0 * alpha ** 2 / beta) * np.sum(terms))


def halfspace_chunk(z0, u, mode):
    r"""Importance-sampled integrand weights over the half-space z > z0.

    Maps a chunk of uniforms to sample points with density
    p(z) = 3*z0^3/z^4, p(s|z) = 4*z^4*s/(s^2+z^2)^3, phi uniform, and
    evaluates f/pdf for f = 1/r^6 (``mode`` 0) or f = G_xx = 2*(1/r^6 +
    3*x^2/r^8) (``mode`` 1), c = 1.

    Parameters
    ----------
    z0 : float
        Distance from the dipole at the origin to the half-space surface.
    u : ndarray, shape (3, m)
        Uniform variates in [0, 1).
    mode : int
        0 for the r^-6 battery integrand, 1 for G_xx.

    Returns
    -------
    (float, float)
        Sum of weights and sum of squared weights over the chunk.
    """
    z = z0 * (1.0 - u[0]) ** (-1.0 / 3.0)
    s2 = z * z * ((1.0 - u[1]) ** (-0.5) - 1.0)
    r2 = s2 + z * z
    # p(s|z)/(2*pi*s) with the s cancelled analytically; no 0/0 at s = 0
    pdf = (3.0 * z0 ** 3 / z ** 4) * (4.0 * z ** 4 / (TWO_PI * r2 ** 3))
    r6 = r2 ** 3
    if mode == 0:
        f = 1.0 / r6
    else:
        x2 = s2 * np.cos(TWO_PI * u[2]) ** 2
        f = 2.0 * (1.0 / r6 + 3.0 * x2 / (r6 * r2))
    w = f / pdf
    return float(np.sum(w)), float(np.sum(w * w))
