"""Pure-Python (numpy) fallback for the compiled RK4 kernels.

Mirrors the call signatures of ``_kernels`` exactly so the two are
interchangeable behind :mod:`wmrecall.backend`.
"""

import math

import numpy as np

from .model import network_rhs_arrays


def backend_name():
    return "python"


def reduced_trajectory(d0, e0, kappa, g_a, tau, dt, n_steps, stride,
                       blowup, out_d, out_e):
    d, e = d0, e0
    out_d[0] = d
    out_e[0] = e
    rec = 0
    tanh = math.tanh
    for step in range(n_steps):
        f = tanh(0.5 * d)
        kd1 = -d - e + kappa * f
        ke1 = (g_a * f - e) / tau

        td = d + 0.5 * dt * kd1
        te = e + 0.5 * dt * ke1
        f = tanh(0.5 * td)
        kd2 = -td - te + kappa * f
        ke2 = (g_a * f - te) / tau

        td = d + 0.5 * dt * kd2
        te = e + 0.5 * dt * ke2
        f = tanh(0.5 * td)
        kd3 = -td - te + kappa * f
        ke3 = (g_a * f - te) / tau

        td = d + dt * kd3
        te = e + dt * ke3
        f = tanh(0.5 * td)
        kd4 = -td - te + kappa * f
        ke4 = (g_a * f - te) / tau

        d = d + dt / 6.0 * (kd1 + 2.0 * kd2 + 2.0 * kd3 + kd4)
        e = e + dt / 6.0 * (ke1 + 2.0 * ke2 + 2.0 * ke3 + ke4)

        if not (math.isfinite(d) and math.isfinite(e)) \
                or abs(d) > blowup or abs(e) > blowup:
            return step + 1
        if (step + 1) % stride == 0:
            rec += 1
            out_d[rec] = d
            out_e[rec] = e
    return -1


def network_trajectory(s0, a0, omega, g_a, tau, dt, n_steps, stride,
                       blowup, out_s, out_a, scratch):
    s = np.array(s0, dtype=float)
    a = np.array(a0, dtype=float)
    out_s[0] = s
    out_a[0] = a
    rec = 0
    for step in range(n_steps):
        ks1, ka1 = network_rhs_arrays(s, a, omega, g_a, tau)
        ks2, ka2 = network_rhs_arrays(s + 0.5 * dt * ks1, a + 0.5 * dt * ka1,
                                      omega, g_a, tau)
        ks3, ka3 = network_rhs_arrays(s + 0.5 * dt * ks2, a + 0.5 * dt * ka2,
                                      omega, g_a, tau)
        ks4, ka4 = network_rhs_arrays(s + dt * ks3, a + dt * ka3,
                                      omega, g_a, tau)
        s = s + dt / 6.0 * (ks1 + 2.0 * ks2 + 2.0 * ks3 + ks4)
        a = a + dt / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4)

        if not (np.isfinite(s).all() and np.isfinite(a).all()) \
                or max(np.abs(s).max(), np.abs(a).max()) > blowup:
            return step + 1
        if (step + 1) % stride == 0:
            rec += 1
            out_s[rec] = s
            out_a[rec] = a
    return -1
