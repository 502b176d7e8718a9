# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of :mod:`coupled_nls._pykernel` (same algorithm, same API)."""

from libc.math cimport fabs, pow, copysign

import numpy as np

DEF MAXDIM = 4

cdef int END = 0, CROSS = 1, TURN = 2, BLOWUP = 3, FAIL = 4

cdef double A21 = 1.0 / 5
cdef double A31 = 3.0 / 40, A32 = 9.0 / 40
cdef double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9
cdef double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729
cdef double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176, A65 = -5103.0 / 18656
cdef double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84
cdef double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40
cdef double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9

cdef double HMAX = 0.5
cdef double HMIN = 1e-14


cdef inline void _rhs(double n, double p, double* mu, double* beta, int N,
                      double r, double* y, double* dy) noexcept nogil:
    cdef double fr = (n - 1.0) / r
    cdef double u, v, a, f, uk, ak
    cdef int j
    for j in range(N):
        u = y[j]
        v = y[N + j]
        a = pow(fabs(u), p)
        f = u - mu[j] * a * a * u
        if N == 2:
            uk = y[1 - j]
            ak = pow(fabs(uk), p)
            f -= beta[j] * ak * fabs(uk) * copysign(a, u)
        dy[j] = v
        dy[N + j] = f - fr * v


def integrate_radial(n, p, mu, beta, double r0, y0, nodes, double r_end,
                     double atol, double rtol, bint events=False, double cap=1e6):
    cdef int N = len(mu)
    cdef int dim = 2 * N
    if N < 1 or N > 2:
        raise ValueError("only 1 or 2 components are supported")
    cdef double cn = n, cp = p
    cdef double cmu[2]
    cdef double cbeta[2]
    cdef int i, j
    for j in range(N):
        cmu[j] = mu[j]
        cbeta[j] = beta[j]
    cdef const double[::1] nd = np.ascontiguousarray(nodes, dtype=float)
    cdef Py_ssize_t nn = nd.shape[0]
    out_arr = np.zeros((nn, dim))
    cdef double[:, ::1] out = out_arr
    cdef double y[MAXDIM]
    cdef double yn[MAXDIM]
    cdef double yt[MAXDIM]
    cdef double k1[MAXDIM]
    cdef double k2[MAXDIM]
    cdef double k3[MAXDIM]
    cdef double k4[MAXDIM]
    cdef double k5[MAXDIM]
    cdef double k6[MAXDIM]
    cdef double k7[MAXDIM]
    for i in range(dim):
        y[i] = y0[i]
    cdef double r = r0
    cdef double h = min(0.02, max(r, 1e-5))
    cdef Py_ssize_t idx = 0
    cdef long nsteps = 0
    cdef int status = END
    cdef double target, step, rn, err, e, sc, q, fac
    cdef bint landing, stop
    if nn > 0 and r_end < nd[nn - 1]:
        r_end = nd[nn - 1]
    if r_end < r:
        r_end = r

    with nogil:
        _rhs(cn, cp, cmu, cbeta, N, r, y, k1)
        while True:
            if idx < nn:
                target = nd[idx]
            else:
                target = r_end
            if r >= target:
                if idx < nn:
                    for i in range(dim):
                        out[idx, i] = y[i]
                    idx += 1
                    continue
                break
            step = h
            if step > HMAX:
                step = HMAX
            landing = False
            if step >= target - r:
                step = target - r
                landing = True
            if step < HMIN:
                status = FAIL
                break
            for i in range(dim):
                yt[i] = y[i] + step * A21 * k1[i]
            _rhs(cn, cp, cmu, cbeta, N, r + C2 * step, yt, k2)
            for i in range(dim):
                yt[i] = y[i] + step * (A31 * k1[i] + A32 * k2[i])
            _rhs(cn, cp, cmu, cbeta, N, r + C3 * step, yt, k3)
            for i in range(dim):
                yt[i] = y[i] + step * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
            _rhs(cn, cp, cmu, cbeta, N, r + C4 * step, yt, k4)
            for i in range(dim):
                yt[i] = y[i] + step * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
            _rhs(cn, cp, cmu, cbeta, N, r + C5 * step, yt, k5)
            for i in range(dim):
                yt[i] = y[i] + step * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
            _rhs(cn, cp, cmu, cbeta, N, r + step, yt, k6)
            for i in range(dim):
                yn[i] = y[i] + step * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i])
            if landing:
                rn = target
            else:
                rn = r + step
            _rhs(cn, cp, cmu, cbeta, N, rn, yn, k7)
            err = 0.0
            for i in range(dim):
                e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
                sc = atol + rtol * max(fabs(y[i]), fabs(yn[i]))
                q = fabs(e) / sc
                if q > err:
                    err = q
            if not err <= 1.0:
                if err != err:
                    fac = 0.2
                else:
                    fac = max(0.2, 0.9 * pow(err, -0.2))
                h = step * fac
                continue
            nsteps += 1
            if err == 0.0:
                fac = 5.0
            else:
                fac = min(5.0, max(0.2, 0.9 * pow(err, -0.2)))
            if not landing or fac < 1.0:
                h = step * fac
            elif step * fac > h:
                h = step * fac
            r = rn
            for i in range(dim):
                y[i] = yn[i]
                k1[i] = k7[i]
            stop = False
            for j in range(N):
                if fabs(y[j]) > cap:
                    status = BLOWUP
                    stop = True
                elif events and y[j] < 0.0:
                    status = CROSS
                    stop = True
                elif events and y[N + j] > 0.0 and y[j] > 0.0:
                    status = TURN
                    stop = True
            if stop:
                if idx < nn and r >= nd[idx]:
                    for i in range(dim):
                        out[idx, i] = y[i]
                    idx += 1
                break

    y_stop = np.array([y[i] for i in range(dim)])
    return out_arr, idx, status, r, y_stop, nsteps
