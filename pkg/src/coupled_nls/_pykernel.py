"""Pure-Python Dormand-Prince 5(4) integrator for the radial system.

Reference implementation of :func:`integrate_radial`; the compiled module
``_ckernel`` follows it step for step and must return identical results up
to floating-point contraction.

State layout is ``y = (u_1..u_N, v_1..v_N)`` with v = u' and

    u_j'' = -(n-1)/r v_j + u_j - mu_j |u_j|^{2p} u_j
            - beta_j |u_k|^{p+1} |u_j|^{p-1} u_j          (k != j, N = 2).
"""

import math

import numpy as np

END, CROSS, TURN, BLOWUP, FAIL = 0, 1, 2, 3, 4

A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = 71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40
C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9

HMAX = 0.5
HMIN = 1e-14


def _rhs(n, p, mu, beta, N, r, y):
    dy = [0.0] * (2 * N)
    fr = (n - 1) / r
    for j in range(N):
        u = y[j]
        v = y[N + j]
        a = abs(u) ** p
        f = u - mu[j] * a * a * u
        if N == 2:
            uk = y[1 - j]
            ak = abs(uk) ** p
            f -= beta[j] * ak * abs(uk) * math.copysign(a, u)
        dy[j] = v
        dy[N + j] = f - fr * v
    return dy


def integrate_radial(n, p, mu, beta, r0, y0, nodes, r_end, atol, rtol, events=False, cap=1e6):
    """Integrate from ``r0`` through every radius in ``nodes`` (steps land on
    them exactly, states are recorded there), then freely up to ``r_end``.

    Returns ``(out, n_rec, status, r_stop, y_stop, nsteps)``. ``status`` is
    END, CROSS (some u_j < 0), TURN (some u_j' > 0 with u_j > 0, only with
    ``events``), BLOWUP (|u_j| > cap) or FAIL (step size underflow).
    """
    n = float(n)
    p = float(p)
    mu = [float(x) for x in mu]
    beta = [float(x) for x in beta]
    N = len(mu)
    dim = 2 * N
    nodes = np.asarray(nodes, dtype=float)
    nn = nodes.shape[0]
    out = np.zeros((nn, dim))
    y = [float(x) for x in y0]
    r = float(r0)
    h = min(0.02, max(r, 1e-5))
    k1 = _rhs(n, p, mu, beta, N, r, y)
    idx = 0
    nsteps = 0
    status = END
    r_end = max(float(r_end), nodes[-1] if nn else r)

    while True:
        if idx < nn:
            target = nodes[idx]
        else:
            target = r_end
        if r >= target:
            if idx < nn:
                out[idx, :] = y
                idx += 1
                continue
            break
        step = min(h, HMAX, target - r)
        landing = step == target - r
        if step < HMIN:
            status = FAIL
            break
        yt = [y[i] + step * A21 * k1[i] for i in range(dim)]
        k2 = _rhs(n, p, mu, beta, N, r + C2 * step, yt)
        yt = [y[i] + step * (A31 * k1[i] + A32 * k2[i]) for i in range(dim)]
        k3 = _rhs(n, p, mu, beta, N, r + C3 * step, yt)
        yt = [y[i] + step * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]) for i in range(dim)]
        k4 = _rhs(n, p, mu, beta, N, r + C4 * step, yt)
        yt = [y[i] + step * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]) for i in range(dim)]
        k5 = _rhs(n, p, mu, beta, N, r + C5 * step, yt)
        yt = [
            y[i] + step * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
            for i in range(dim)
        ]
        k6 = _rhs(n, p, mu, beta, N, r + step, yt)
        yn = [
            y[i] + step * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i])
            for i in range(dim)
        ]
        rn = target if landing else r + step
        k7 = _rhs(n, p, mu, beta, N, rn, yn)
        err = 0.0
        for i in range(dim):
            e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            sc = atol + rtol * max(abs(y[i]), abs(yn[i]))
            q = abs(e) / sc
            if q > err:
                err = q
        if not err <= 1.0:
            if err != err:
                fac = 0.2
            else:
                fac = max(0.2, 0.9 * err ** -0.2)
            h = step * fac
            continue
        nsteps += 1
        fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
        if not landing or fac < 1.0:
            h = step * fac
        else:
            h = max(h, step * fac)
        r = rn
        y = yn
        k1 = k7
        stop = False
        for j in range(N):
            if abs(y[j]) > cap:
                status = BLOWUP
                stop = True
            elif events and y[j] < 0.0:
                status = CROSS
                stop = True
            elif events and y[N + j] > 0.0 and y[j] > 0.0:
                status = TURN
                stop = True
        if stop:
            if idx < nn and r >= nodes[idx]:
                out[idx, :] = y
                idx += 1
            break
    return out, idx, status, r, np.array(y), nsteps
