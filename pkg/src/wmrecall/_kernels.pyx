# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernels for the reduced and full network systems.

Both kernels record every `stride`-th step (including step 0) into
caller-allocated output arrays and return -1 on success, or the index of the
first step at which the state became non-finite or exceeded `blowup`.
"""

from libc.math cimport tanh, exp, isfinite, fabs


def backend_name():
    return "cython"


def reduced_trajectory(double d0, double e0, double kappa, double g_a,
                       double tau, double dt, long n_steps, long stride,
                       double blowup, double[::1] out_d, double[::1] out_e):
    cdef double d = d0, e = e0
    cdef double kd1, ke1, kd2, ke2, kd3, ke3, kd4, ke4, f, td, te
    cdef long step, rec = 0
    out_d[0] = d
    out_e[0] = e
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

        if not (isfinite(d) and isfinite(e)) or fabs(d) > blowup or fabs(e) > blowup:
            return step + 1
        if (step + 1) % stride == 0:
            rec += 1
            out_d[rec] = d
            out_e[rec] = e
    return -1


cdef void _network_rhs(double[:, ::1] s, double[:, ::1] a,
                       double omega, double g_a, double tau, double half_kappa,
                       double[:, ::1] ds, double[:, ::1] da) noexcept nogil:
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i
    cdef double m, e1, e2, o1, o2, tot1 = 0.0, tot2 = 0.0
    # softmax per hypercolumn, accumulating per-column totals
    for i in range(n):
        m = s[i, 0] if s[i, 0] > s[i, 1] else s[i, 1]
        e1 = exp(s[i, 0] - m)
        e2 = exp(s[i, 1] - m)
        o1 = e1 / (e1 + e2)
        o2 = 1.0 - o1
        # stash outputs in ds temporarily
        ds[i, 0] = o1
        ds[i, 1] = o2
        tot1 += o1
        tot2 += o2
    for i in range(n):
        o1 = ds[i, 0]
        o2 = ds[i, 1]
        ds[i, 0] = -s[i, 0] - a[i, 0] - half_kappa + omega * (tot1 - o1)
        ds[i, 1] = -s[i, 1] - a[i, 1] - half_kappa + omega * (tot2 - o2)
        da[i, 0] = (g_a * o1 - a[i, 0]) / tau
        da[i, 1] = (g_a * o2 - a[i, 1]) / tau


def network_trajectory(double[:, ::1] s0, double[:, ::1] a0,
                       double omega, double g_a, double tau,
                       double dt, long n_steps, long stride, double blowup,
                       double[:, :, ::1] out_s, double[:, :, ::1] out_a,
                       double[:, :, ::1] scratch):
    """scratch must be a (8, N, 2) work array."""
    cdef Py_ssize_t n = s0.shape[0]
    cdef double[:, ::1] s = scratch[0], a = scratch[1]
    cdef double[:, ::1] ts = scratch[2], ta = scratch[3]
    cdef double[:, ::1] ks = scratch[4], ka = scratch[5]
    cdef double[:, ::1] acc_s = scratch[6], acc_a = scratch[7]
    cdef double half_kappa = 0.5 * (n - 1) * omega
    cdef Py_ssize_t i, j
    cdef long step, rec = 0, fail = -1
    cdef bint ok

    for i in range(n):
        for j in range(2):
            s[i, j] = s0[i, j]
            a[i, j] = a0[i, j]
            out_s[0, i, j] = s0[i, j]
            out_a[0, i, j] = a0[i, j]

    with nogil:
        for step in range(n_steps):
            # stage 1
            _network_rhs(s, a, omega, g_a, tau, half_kappa, ks, ka)
            for i in range(n):
                for j in range(2):
                    acc_s[i, j] = ks[i, j]
                    acc_a[i, j] = ka[i, j]
                    ts[i, j] = s[i, j] + 0.5 * dt * ks[i, j]
                    ta[i, j] = a[i, j] + 0.5 * dt * ka[i, j]
            # stage 2
            _network_rhs(ts, ta, omega, g_a, tau, half_kappa, ks, ka)
            for i in range(n):
                for j in range(2):
                    acc_s[i, j] += 2.0 * ks[i, j]
                    acc_a[i, j] += 2.0 * ka[i, j]
                    ts[i, j] = s[i, j] + 0.5 * dt * ks[i, j]
                    ta[i, j] = a[i, j] + 0.5 * dt * ka[i, j]
            # stage 3
            _network_rhs(ts, ta, omega, g_a, tau, half_kappa, ks, ka)
            for i in range(n):
                for j in range(2):
                    acc_s[i, j] += 2.0 * ks[i, j]
                    acc_a[i, j] += 2.0 * ka[i, j]
                    ts[i, j] = s[i, j] + dt * ks[i, j]
                    ta[i, j] = a[i, j] + dt * ka[i, j]
            # stage 4
            _network_rhs(ts, ta, omega, g_a, tau, half_kappa, ks, ka)
            ok = True
            for i in range(n):
                for j in range(2):
                    s[i, j] = s[i, j] + dt / 6.0 * (acc_s[i, j] + ks[i, j])
                    a[i, j] = a[i, j] + dt / 6.0 * (acc_a[i, j] + ka[i, j])
                    if not (isfinite(s[i, j]) and isfinite(a[i, j])) \
                            or fabs(s[i, j]) > blowup or fabs(a[i, j]) > blowup:
                        ok = False
            if not ok:
                fail = step + 1
                break
            if (step + 1) % stride == 0:
                rec += 1
                for i in range(n):
                    for j in range(2):
                        out_s[rec, i, j] = s[i, j]
                        out_a[rec, i, j] = a[i, j]
    return fail
