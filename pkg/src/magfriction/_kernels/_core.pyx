# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel lane.

Mirrors the signatures of ``_pure``; see that module for the documented
contracts. Loops here are straight C loops; reductions are linear, so values
may differ from the pure lane in the last ulp.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, pow, sqrt

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925287


def rk4_batch(alpha, init, dt, n_steps, stride):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a_arr = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] s_arr = np.ascontiguousarray(init, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] h_arr = np.ascontiguousarray(dt, dtype=np.float64)
    if n_steps % stride != 0:
        raise ValueError("n_steps must be a multiple of stride")
    cdef Py_ssize_t B = s_arr.shape[1]
    cdef Py_ssize_t n_out = n_steps // stride + 1
    cdef cnp.ndarray[cnp.float64_t, ndim=3] out = np.empty((n_out, 4, B))
    cdef Py_ssize_t b, step, k
    cdef long nst = n_steps, strd = stride
    cdef double a, a2, h, hh, h6
    cdef double x, y, vx, vy
    cdef double ax1, ay1, ax2, ay2, ax3, ay3, ax4, ay4
    cdef double x2, y2, vx2, vy2, x3, y3, vx3, vy3, x4, y4, vx4, vy4
    for b in range(B):
        a = a_arr[b]
        a2 = 2.0 * a
        h = h_arr[b]
        hh = 0.5 * h
        h6 = h / 6.0
        x = s_arr[0, b]
        y = s_arr[1, b]
        vx = s_arr[2, b]
        vy = s_arr[3, b]
        out[0, 0, b] = x
        out[0, 1, b] = y
        out[0, 2, b] = vx
        out[0, 3, b] = vy
        k = 1
        for step in range(1, nst + 1):
            ax1 = -x + a2 * vy
            ay1 = -y - a2 * vx
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
            x4 = x + h * vx3
            y4 = y + h * vy3
            vx4 = vx + h * ax3
            vy4 = vy + h * ay3
            ax4 = -x4 + a2 * vy4
            ay4 = -y4 - a2 * vx4
            x = x + h6 * (vx + 2.0 * vx2 + 2.0 * vx3 + vx4)
            y = y + h6 * (vy + 2.0 * vy2 + 2.0 * vy3 + vy4)
            vx = vx + h6 * (ax1 + 2.0 * ax2 + 2.0 * ax3 + ax4)
            vy = vy + h6 * (ay1 + 2.0 * ay2 + 2.0 * ay3 + ay4)
            if step % strd == 0:
                out[k, 0, b] = x
                out[k, 1, b] = y
                out[k, 2, b] = vx
                out[k, 3, b] = vy
                k += 1
    return out


def mode_sum(double alpha, double beta, long n_max, double hbar=1.0):
    cdef double acc = 0.0
    cdef double u2, un
    cdef long n
    if n_max <= 0:
        return 0.0
    for n in range(1, n_max + 1):
        un = TWO_PI * n / (beta * hbar)
        u2 = un * un
        acc += u2 / ((u2 + 1.0) * (u2 + 1.0))
    return 2.0 * (2.0 * alpha * alpha / beta) * acc


def halfspace_chunk(double z0, u, int mode):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] uu = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t m = uu.shape[1]
    cdef Py_ssize_t i
    cdef double z, s2, r2, r6, pdf, f, w, x2
    cdef double sw = 0.0, sw2 = 0.0
    cdef double z03 = z0 * z0 * z0
    for i in range(m):
        z = z0 * pow(1.0 - uu[0, i], -1.0 / 3.0)
        s2 = z * z * (1.0 / sqrt(1.0 - uu[1, i]) - 1.0)
        r2 = s2 + z * z
        r6 = r2 * r2 * r2
        pdf = (3.0 * z03 / (z * z * z * z)) * (4.0 * z * z * z * z / (TWO_PI * r6))
        if mode == 0:
            f = 1.0 / r6
        else:
            x2 = s2 * cos(TWO_PI * uu[2, i]) * cos(TWO_PI * uu[2, i])
            f = 2.0 * (1.0 / r6 + 3.0 * x2 / (r6 * r2))
        w = f / pdf
        sw += w
        sw2 += w * w
    return sw, sw2
