"""Positive radial solution of Δu - u + u^{2p+1} = 0 by shooting.

The shot from u(0) = a is an overshoot when u crosses zero and an
undershoot when u' turns positive while u > 0 (or the shot never crosses).
Bisection on a is carried to machine precision. Because the decaying
solution is unstable in r, a shot only tracks it until the growing mode
(relative size ~ eps * e^{2r}) becomes visible; from there the integration
restarts with u fixed and the slope bisected the same way. Segments are
glued where the two bracketing shots still agree to ``AGREE``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import InvalidArgument, NoBracket, NoConvergence
from .params import ScalarParams
from .radial import RadialGrid, RadialProfile, grid_with_spacing, interior

AGREE = 1e-10
OVERRUN = 30.0
DEFAULT_SPACING = 0.0025


def default_r_max(p: float) -> float:
    return 12.0 * max(1.0, 1.0 / p)


def default_grid(n: int, p: float, spacing: float = DEFAULT_SPACING, r_max: float | None = None) -> RadialGrid:
    return grid_with_spacing(n, default_r_max(p) if r_max is None else r_max, spacing)


@dataclass(frozen=True)
class ShootResult:
    omega: RadialProfile
    u0: float
    ode_residual: float
    iterations: int
    segments: int
    slope: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "u0": self.u0,
            "residual": self.ode_residual,
            "iterations": self.iterations,
            "segments": self.segments,
            "grid": self.omega.grid.to_dict(),
        }


def taylor_start(n: int, a, f, h0: float):
    """State at r = h0 from u(0) = a, u'(0) = 0 and Δu(0) = f (Δu = n u'' at 0)."""
    a = np.asarray(a, dtype=float)
    f = np.asarray(f, dtype=float)
    return np.concatenate([a + h0**2 / (2 * n) * f, h0 / n * f])


def _first_disagreement(lo: np.ndarray, hi: np.ndarray, ncomp: int) -> int:
    """Index of the first row where two trajectories differ by more than AGREE."""
    scale = np.abs(lo[:, :ncomp]).sum(axis=1) + np.abs(lo[:, ncomp:]).sum(axis=1)
    dev = np.abs(hi - lo).max(axis=1)
    bad = np.nonzero(~(dev <= AGREE * scale))[0]
    return int(bad[0]) if bad.size else lo.shape[0]


def scalar_residual(profile: RadialProfile, p: float) -> np.ndarray:
    """Δu - u + |u|^{2p} u on the nodes where the stencil is interior."""
    u = profile.values
    lap = profile.grid.laplacian @ u
    res = lap - u + np.abs(u) ** (2 * p) * u
    return res[interior(profile.grid)]


def omega_solve(params: ScalarParams, grid: RadialGrid | None = None, tol: float = 1e-8,
                max_iter: int = 2000, decay_threshold: float = 1e-4) -> ShootResult:
    """Shoot for the ground state ω of the scalar equation on ``grid``.

    ``tol`` sets the integrator tolerance (tol/100, absolute and relative);
    the returned ``ode_residual`` is the sup-norm of the fourth-order
    finite-difference residual over nodes with r >= h.

    Raises NoBracket when no overshoot is found above u(0) = 1 and
    NoConvergence when the budget runs out or the restarts stall.
    """
    if not tol > 0:
        raise InvalidArgument("tol must be positive")
    n, p = params.n, params.p
    if grid is None:
        grid = default_grid(n, p)
    if grid.n != n:
        raise InvalidArgument(f"grid dimension {grid.n} does not match n={n}")
    r = np.asarray(grid.nodes)
    m = grid.m
    h0 = min(1e-4, grid.h / 4)
    mu, beta = (1.0,), (0.0,)
    r_end = grid.r_max + OVERRUN

    values = np.empty(m)
    slope = np.empty(m)
    iterations = 0
    segments = 0
    k = 0
    u0 = None

    while k < m - 1:
        if k == 0:
            def shoot(a):
                y0 = taylor_start(n, [a], [a - abs(a) ** (2 * p) * a], h0)
                return kernel.integrate_radial(n, p, mu, beta, h0, y0, r[1:], r_end,
                                               tol / 100, tol / 100, True)

            under = 1.0
            over = 10.0 * (p + 1) ** (1 / (2 * p))
        else:
            uk, vk = values[k], slope[k]
            scale = abs(uk) + abs(vk)

            def shoot(v, uk=uk, k=k, scale=scale):
                return kernel.integrate_radial(n, p, mu, beta, r[k], [uk, v], r[k + 1:], r_end,
                                               tol / 100 * scale, tol / 100, True)

            under = over = None
            delta = 1e-8
            while delta < 1.0 and (under is None or over is None):
                for cand in (vk * (1 - delta), vk * (1 + delta)):
                    st = shoot(cand)[2]
                    iterations += 1
                    if st == kernel.CROSS and over is None:
                        over = cand
                    elif st in (kernel.TURN, kernel.END) and under is None:
                        under = cand
                delta *= 10
            if under is None or over is None:
                raise NoConvergence(f"could not re-bracket the tail at r={r[k]:.4g}")

        res_over = shoot(over)
        if res_over[2] == kernel.FAIL:
            raise NoConvergence("integrator step size underflow")
        if k == 0:
            expansions = 0
            while res_over[2] != kernel.CROSS:
                expansions += 1
                if expansions > 20:
                    raise NoBracket(f"no overshoot up to u(0)={over:.4g}")
                over *= 2.0
                res_over = shoot(over)
            res_under = shoot(under)
            if res_under[2] == kernel.CROSS:
                raise NoBracket("u(0)=1 already overshoots")
        else:
            res_under = shoot(under)

        while True:
            mid = 0.5 * (under + over)
            if mid == under or mid == over:
                break
            iterations += 1
            if iterations > max_iter:
                raise NoConvergence(f"bisection budget of {max_iter} exhausted")
            res = shoot(mid)
            if res[2] == kernel.FAIL:
                raise NoConvergence("integrator step size underflow")
            if res[2] == kernel.CROSS:
                over, res_over = mid, res
            else:
                under, res_under = mid, res

        if k == 0:
            u0 = 0.5 * (under + over)
        lo, nlo = res_under[0], res_under[1]
        hi, nhi = res_over[0], res_over[1]
        nrec = min(nlo, nhi)
        stop = _first_disagreement(lo[:nrec], hi[:nrec], 1)
        stop = min(stop, nrec)
        # Rows of ``lo`` correspond to nodes k+1, k+2, ...
        good = stop
        if k == 0 and good == 0:
            raise NoConvergence("shots diverge before the first node")
        if good == 0:
            raise NoConvergence(f"tail restart stalled at r={r[k]:.4g}")
        last = good
        mean = 0.5 * (lo[:last] + hi[:last])
        if k == 0:
            values[0], slope[0] = u0, 0.0
        values[k + 1:k + 1 + last] = mean[:, 0]
        slope[k + 1:k + 1 + last] = mean[:, 1]
        # Restart from a node inside the trusted stretch, not its very edge.
        k_next = k + last if k + last >= m - 1 else k + max(1, (3 * last) // 4)
        k = k_next
        segments += 1

    profile = RadialProfile(grid, values)
    if not np.all(values[:-1] > 0):
        raise NoConvergence("shooting profile is not positive")
    if values[-1] >= decay_threshold:
        raise NoConvergence(
            f"profile has not decayed at r_max={grid.r_max:g} (u={values[-1]:.3g}); enlarge r_max"
        )
    residual = scalar_residual(profile, p)[1:]
    return ShootResult(
        omega=profile,
        u0=float(u0),
        ode_residual=float(np.max(np.abs(residual))) if residual.size else 0.0,
        iterations=iterations,
        segments=segments,
        slope=slope,
    )


def omega_closed_form_1d(p: float, grid: RadialGrid) -> RadialProfile:
    """(p+1)^{1/(2p)} sech^{1/p}(p r), the one-dimensional ground state."""
    if grid.n != 1:
        raise InvalidArgument("the closed form only applies in one dimension")
    if not p > 0:
        raise InvalidArgument("p must be positive")
    r = np.asarray(grid.nodes)
    return RadialProfile(grid, (p + 1) ** (1 / (2 * p)) * np.cosh(p * r) ** (-1 / p))
