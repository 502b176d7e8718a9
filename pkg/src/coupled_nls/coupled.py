"""Ground states of the two-component system.

Two independent solvers are provided: a projected, H^1-preconditioned
gradient descent on the energy restricted to the Nehari manifold, and a
two-parameter radial shooting driven by damped Newton. Neither uses the
closed form; that is only compared against in the tests.

For beta1 != beta2 the system is the Euler-Lagrange equation of the energy
whose second component carries the weight beta1/beta2 and whose cross term
has coefficient beta1 (see :attr:`SystemParams.weights`). This is the
standard energy of the rescaled pair (u1, sqrt(beta1/beta2) u2), so for
beta1 = beta2 everything reduces to the usual functional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu
from scipy.special import kve

from . import kernel
from .errors import (
    AssumptionViolation,
    Diverged,
    InvalidArgument,
    NoConvergence,
    NotInM,
    SingularJacobian,
    SolverError,
)
from .omega import default_grid, taylor_start
from .params import StandardParams, SystemParams
from .radial import (
    RadialGrid,
    RadialProfile,
    cumulative_integral,
    gradient,
    integrate_values,
    interior,
    require_same_grid,
)


def as_system(params) -> SystemParams:
    if isinstance(params, StandardParams):
        return params.to_system()
    if isinstance(params, SystemParams):
        return params
    raise InvalidArgument(f"expected SystemParams or StandardParams, got {type(params).__name__}")


@dataclass(frozen=True)
class Integrals:
    """Per-component building blocks of every functional used here."""

    mass: tuple[float, float]
    grad: tuple[float, float]
    power: tuple[float, float]  # ∫ |u_j|^{2p+2}
    cross: float  # ∫ |u1 u2|^{p+1}


def integrals(u1: RadialProfile, u2: RadialProfile, p: float) -> Integrals:
    g = require_same_grid(u1, u2)
    a, b = u1.values, u2.values
    return Integrals(
        mass=(integrate_values(g, a * a), integrate_values(g, b * b)),
        grad=(integrate_values(g, gradient(u1) ** 2), integrate_values(g, gradient(u2) ** 2)),
        power=(integrate_values(g, np.abs(a) ** (2 * p + 2)), integrate_values(g, np.abs(b) ** (2 * p + 2))),
        cross=integrate_values(g, np.abs(a * b) ** (p + 1)),
    )


def _qp(I: Integrals, sp: SystemParams) -> tuple[float, float]:
    w1, w2 = sp.weights
    Q = w1 * (I.grad[0] + I.mass[0]) + w2 * (I.grad[1] + I.mass[1])
    P = w1 * sp.mu1 * I.power[0] + 2 * sp.cross * I.cross + w2 * sp.mu2 * I.power[1]
    return Q, P


def nehari_quantities(u1: RadialProfile, u2: RadialProfile, params) -> tuple[float, float]:
    """Quadratic part Q = Σ w_j ||u_j||_{H1}^2 and nonlinear part P."""
    sp = as_system(params)
    return _qp(integrals(u1, u2, sp.p), sp)


def energy(u1: RadialProfile, u2: RadialProfile, params) -> float:
    sp = as_system(params)
    Q, P = nehari_quantities(u1, u2, sp)
    return 0.5 * Q - P / (2 * sp.p + 2)


def nehari_scale(u1: RadialProfile, u2: RadialProfile, params) -> float:
    """The t > 0 with (t u1, t u2) on the Nehari manifold: t^{2p} = Q/P."""
    sp = as_system(params)
    Q, P = nehari_quantities(u1, u2, sp)
    if not P > 0:
        raise NotInM(f"nonlinear part P={P:.6g} is not positive")
    return (Q / P) ** (1 / (2 * sp.p))


def nehari_residual(I: Integrals, sp: SystemParams) -> float:
    Q, P = _qp(I, sp)
    return abs(Q - P) / max(Q, 1e-300)


def pohozaev_defect(I: Integrals, sp: SystemParams) -> float:
    """Relative defect of (n-2)/2 Σ w G + n/2 Σ w M = n/(2p+2) P."""
    n, p = sp.n, sp.p
    w1, w2 = sp.weights
    _, P = _qp(I, sp)
    lhs = (n - 2) / 2 * (w1 * I.grad[0] + w2 * I.grad[1]) + n / 2 * (w1 * I.mass[0] + w2 * I.mass[1])
    rhs = n / (2 * p + 2) * P
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale > 0 else 0.0


def forcing(a: np.ndarray, b: np.ndarray, sp: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    """Right-hand sides mu_j u_j^{2p+1} + beta_j |u_k|^{p+1} |u_j|^{p-1} u_j."""
    p = sp.p
    pa, pb = np.abs(a) ** p, np.abs(b) ** p
    f1 = sp.mu1 * pa * pa * a + sp.beta1 * pb * np.abs(b) * np.sign(a) * pa
    f2 = sp.mu2 * pb * pb * b + sp.beta2 * pa * np.abs(a) * np.sign(b) * pb
    return f1, f2


def el_residuals(u1: RadialProfile, u2: RadialProfile, params) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise defect (u_j - Δu_j) - rhs_j on the interior nodes."""
    sp = as_system(params)
    g = require_same_grid(u1, u2)
    L = g.laplacian
    a, b = u1.values, u2.values
    f1, f2 = forcing(a, b, sp)
    sl = interior(g)
    return (a - L @ a - f1)[sl], (b - L @ b - f2)[sl]


def el_residual(u1: RadialProfile, u2: RadialProfile, params) -> float:
    r1, r2 = el_residuals(u1, u2, params)
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


def l2_distance(u1, u2, v1, v2) -> float:
    g = require_same_grid(u1, u2, v1, v2)
    d = integrate_values(g, (u1.values - v1.values) ** 2) + integrate_values(g, (u2.values - v2.values) ** 2)
    return math.sqrt(max(d, 0.0))


@dataclass(frozen=True)
class GroundStateResult:
    u1: RadialProfile
    u2: RadialProfile
    energy: float
    el_residual: float
    nehari_residual: float
    pohozaev_residual: float
    iterations: int
    method: str = ""
    params: SystemParams | None = field(default=None, repr=False)

    @property
    def u0(self) -> tuple[float, float]:
        return (float(self.u1.values[0]), float(self.u2.values[0]))

    @property
    def quadratic_part(self) -> float:
        return nehari_quantities(self.u1, self.u2, self.params)[0]

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "energy": self.energy,
            "el_residual": self.el_residual,
            "nehari_residual": self.nehari_residual,
            "pohozaev_residual": self.pohozaev_residual,
            "iterations": self.iterations,
            "u0": list(self.u0),
            "grid": self.u1.grid.to_dict(),
        }


def evaluate(u1: RadialProfile, u2: RadialProfile, params, iterations: int = 0, method: str = "") -> GroundStateResult:
    """Bundle a candidate pair with its energy and all residuals."""
    sp = as_system(params)
    I = integrals(u1, u2, sp.p)
    Q, P = _qp(I, sp)
    return GroundStateResult(
        u1=u1,
        u2=u2,
        energy=0.5 * Q - P / (2 * sp.p + 2),
        el_residual=el_residual(u1, u2, sp),
        nehari_residual=nehari_residual(I, sp),
        pohozaev_residual=pohozaev_defect(I, sp),
        iterations=iterations,
        method=method,
        params=sp,
    )


def _require_scope(sp: SystemParams) -> None:
    if not sp.theorem_scope:
        raise AssumptionViolation(
            "need mu1, mu2 <= 0 < beta1, beta2, mu1 beta1^p = mu2 beta2^p and "
            "mu1 + beta2^{(p+1)/2} / beta1^{(p-1)/2} > 0"
        )


def gaussian_init(grid: RadialGrid, rng: np.random.Generator) -> tuple[RadialProfile, RadialProfile]:
    """a_j exp(-r^2) with a_j uniform on [0.5, 2]."""
    a = rng.uniform(0.5, 2.0, size=2)
    g = np.exp(-np.asarray(grid.nodes) ** 2)
    return RadialProfile(grid, a[0] * g), RadialProfile(grid, a[1] * g)


# -- descent ----------------------------------------------------------------

ENERGY_SLACK = 1e-10
MIN_STEP = 1e-6


def ground_state_descent(params, grid: RadialGrid | None = None, init=None, step: float = 0.5,
                         tol: float = 1e-6, max_iter: int = 100_000, seed: int = 0) -> GroundStateResult:
    """Minimize the energy on the Nehari manifold.

    One iteration: u <- |(1 - step) u + step (I - Δ)^{-1} F(u)|, then the
    pair is rescaled onto the Nehari manifold. ``(I - Δ)^{-1}`` is the H^1
    preconditioner (a banded solve with the fourth-order radial Laplacian),
    so ``step`` is independent of the grid spacing. If the energy rises the
    step is halved and the iteration resumes from the last accepted pair.
    Stops once the sup-norm Euler-Lagrange residual is at most ``tol``.
    """
    sp = as_system(params)
    _require_scope(sp)
    if grid is None:
        grid = default_grid(sp.n, sp.p)
    if grid.n != sp.n:
        raise InvalidArgument(f"grid dimension {grid.n} does not match n={sp.n}")
    if not (0 < step <= 1) or not tol > 0:
        raise InvalidArgument("need 0 < step <= 1 and tol > 0")
    if init is None:
        init = gaussian_init(grid, np.random.default_rng(seed))
    u1, u2 = init
    require_same_grid(grid_profile(grid), u1, u2)

    A = (sparse.identity(grid.m, format="csc") - grid.laplacian.tocsc()).tocsc()
    lu = splu(A)
    sl = interior(grid)

    W = np.asarray(grid.weights)
    w1, w2 = sp.weights

    # Nehari projection and energy with the same operator as the iteration, so
    # that discrete solutions of (I - Δ)u = F(u) are exact fixed points.
    def qp(a, b):
        f1, f2 = forcing(a, b, sp)
        Q = w1 * W @ (a * (A @ a)) + w2 * W @ (b * (A @ b))
        P = w1 * W @ (a * f1) + w2 * W @ (b * f2)
        return Q, P

    def project(a, b):
        Q, P = qp(a, b)
        if not P > 0:
            raise NotInM(f"nonlinear part P={P:.6g} is not positive")
        t = (Q / P) ** (1 / (2 * sp.p))
        a, b = t * a, t * b
        Q, P = qp(a, b)
        return a, b, 0.5 * Q - P / (2 * sp.p + 2)

    a, b, E = project(np.abs(u1.values), np.abs(u2.values))
    tau = step
    it = 0
    while True:
        f1, f2 = forcing(a, b, sp)
        res = max(np.max(np.abs((A @ a - f1)[sl])), np.max(np.abs((A @ b - f2)[sl])))
        if res <= tol:
            break
        if it >= max_iter:
            raise NoConvergence(f"descent stopped after {it} iterations (residual {res:.3g})")
        it += 1
        t1, t2 = lu.solve(f1), lu.solve(f2)
        while True:
            na = np.abs((1 - tau) * a + tau * t1)
            nb = np.abs((1 - tau) * b + tau * t2)
            try:
                na, nb, En = project(na, nb)
            except NotInM:
                En = math.inf
            if En <= E + ENERGY_SLACK * abs(E):
                break
            tau *= 0.5
            if tau < MIN_STEP:
                raise Diverged(f"energy keeps increasing (step fell below {MIN_STEP:g})")
        a, b, E = na, nb, En

    return evaluate(RadialProfile(grid, a), RadialProfile(grid, b), sp, iterations=it, method="descent")


def grid_profile(grid: RadialGrid) -> RadialProfile:
    return RadialProfile(grid, np.zeros(grid.m))


# -- shooting ---------------------------------------------------------------

TAIL_LENGTH = 12.0
# restarts amplify integration error, so shots run well below the EL target
# and never looser than INTEGRATION_CEILING, whatever the target
INTEGRATION_FACTOR = 1e-6
INTEGRATION_FLOOR = 1e-13
INTEGRATION_CEILING = 1e-12
TRUST_LENGTH = 6.0
CONTINUATION = (2.0, 4.0, 6.0, 8.0, 10.0, 12.0)


def decay_rate(n: int, r: float) -> float:
    """-w'/w for the decaying solution w of w'' + (n-1)/r w' = w."""
    if n == 1:
        return 1.0
    nu = n / 2 - 1
    return (n / 2 - 1) / r + (kve(nu - 1, r) + kve(nu + 1, r)) / (2 * kve(nu, r))


def scalar_center(n: int, p: float, tol: float = 1e-10) -> float:
    """u(0) of the scalar ground state by plain overshoot/undershoot bisection.

    Only used to seed the Newton iteration, so no profile is produced.
    """
    h0 = 1e-4
    lo, hi = 1.0, 10.0 * (p + 1) ** (1 / (2 * p))
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * mid:
            break
        y0 = taylor_start(n, [mid], [mid - mid ** (2 * p + 1)], h0)
        st = kernel.integrate_radial(n, p, (1.0,), (0.0,), h0, y0, (), 40.0, 1e-12, 1e-12, True)[2]
        if st == kernel.CROSS:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def event_radius(params, a, r_end: float = 40.0) -> float:
    """Radius at which the shot from u(0) = a first crosses zero, turns up or blows up.

    Both components of a positive decreasing solution stay clear of all
    three events, so the radius grows without bound as ``a`` approaches
    the center values of a ground state.
    """
    sp = as_system(params)
    a = np.asarray(a, dtype=float)
    if not np.all(a > 0):
        return 0.0
    h0 = 1e-4
    f1, f2 = forcing(a[:1], a[1:], sp)
    y0 = taylor_start(sp.n, a, [a[0] - f1[0], a[1] - f2[0]], h0)
    cap = 1e3 * (1.0 + float(a.max()))
    out = kernel.integrate_radial(sp.n, sp.p, sp.mu, sp.beta, h0, y0, (), r_end,
                                  1e-11, 1e-11, True, cap)
    return float(out[3])


class _Segment:
    """Shooting map of one segment: parameters -> normalized tail defect."""

    def __init__(self, sp, grid, k, state, tol, scale):
        self.sp, self.grid, self.k = sp, grid, k
        self.state = state  # None on the first segment (Taylor start)
        self.tol = tol
        self.scale = scale
        self.r = np.asarray(grid.nodes)
        # free stepping is much cheaper; the accepted shot lands on the nodes
        self.record = False

    def start(self, x):
        sp, n = self.sp, self.sp.n
        if self.state is None:
            h0 = min(1e-4, self.grid.h / 4)
            f1, f2 = forcing(np.array([x[0]]), np.array([x[1]]), sp)
            y0 = taylor_start(n, x, [x[0] - f1[0], x[1] - f2[0]], h0)
            return h0, y0
        return self.r[self.k], np.array([self.state[0], self.state[1], x[0], x[1]])

    def run(self, x, r_stop, record=True):
        sp = self.sp
        r0, y0 = self.start(x)
        hi = np.searchsorted(self.r, r_stop, side="right")
        nodes = self.r[self.k + 1:hi] if record else ()
        itol = min(max(self.tol * INTEGRATION_FACTOR, INTEGRATION_FLOOR), INTEGRATION_CEILING)
        atol = itol * self.scale
        return kernel.integrate_radial(sp.n, sp.p, sp.mu, sp.beta, r0, y0, nodes, r_stop,
                                       atol, itol, False, 1e3 * (self.scale + 1.0))

    def defect(self, x, R):
        out, nrec, status, r_stop, y, _ = self.run(x, R, record=self.record)
        if status != kernel.END:
            return np.array([np.inf, np.inf])
        kap = decay_rate(self.sp.n, R)
        return np.array([y[2] + kap * y[0], y[3] + kap * y[1]]) / self.scale


STEP_RTOL = 1e-12
POLISH_STEPS = 20


def _jacobian(seg: _Segment, x, F, R, inc):
    # central differences: at strongly coupled points the columns nearly
    # cancel, and a one-sided O(h) error swamps their sum
    J = np.empty((2, 2))
    for j in range(2):
        e = np.zeros(2)
        e[j] = inc[j]
        Fp, Fm = seg.defect(x + e, R), seg.defect(x - e, R)
        if np.all(np.isfinite(Fp)) and np.all(np.isfinite(Fm)):
            J[:, j] = (Fp - Fm) / (2 * e[j])
        elif np.all(np.isfinite(Fp)):
            J[:, j] = (Fp - F) / e[j]
        else:
            J[:, j] = (F - Fm) / e[j]
    return J


def _newton(seg: _Segment, x, R, increments, max_iter=60):
    """Damped Newton on the tail defect.

    The defect's rounding floor grows like the Jacobian, about exp(R), so
    convergence is judged on the Newton step relative to ``x``. Once the
    step is small a few more iterations run while the defect still drops,
    since restarts amplify any leftover error by exp(R).
    """
    x = np.array(x, dtype=float)
    F = seg.defect(x, R)
    if not np.all(np.isfinite(F)):
        raise NoConvergence(f"shooting blew up before r={R:.3g} at the initial guess")
    extra = None
    for it in range(1, max_iter + 1):
        J = _jacobian(seg, x, F, R, increments(x))
        if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e14:
            raise SingularJacobian(f"shooting Jacobian is singular at r={R:.3g}")
        dx = np.linalg.solve(J, -F)
        if extra is None and np.all(np.abs(dx) <= STEP_RTOL * np.abs(x)):
            extra = POLISH_STEPS
        lam, norm = 1.0, np.linalg.norm(F)
        while True:
            xn = x + lam * dx
            Fn = seg.defect(xn, R)
            if np.linalg.norm(Fn) < norm:
                break
            lam *= 0.5
            if lam < 1e-6:
                if extra is not None:
                    return x, it
                raise NoConvergence(f"line search failed at r={R:.3g}")
        x, F = xn, Fn
        if extra is not None:
            extra -= 1
            if extra < 0 or np.all(np.abs(dx) <= 4e-16 * np.abs(x)):
                return x, it
    raise NoConvergence("Newton iteration did not settle")


HOMOTOPY_RADIUS = 4.0


def _homotopy_guess(sp: SystemParams, grid: RadialGrid, tol: float) -> np.ndarray:
    """Track the tail-defect root at a moderate radius from the symmetric problem.

    The path starts at mu = 0, beta = 1 for both components, whose ground
    state has both centers equal to the scalar one, and moves the
    coefficients linearly to ``sp``. A secant predictor and step halving
    keep Newton inside its basin.
    """
    R = HOMOTOPY_RADIUS
    start = np.array([0.0, 0.0, 1.0, 1.0])
    target = np.array([sp.mu1, sp.mu2, sp.beta1, sp.beta2])
    inc = lambda x: 1e-6 * (1.0 + np.abs(x))  # noqa: E731

    def solve(t, x0):
        c = (1 - t) * start + t * target
        seg = _Segment(SystemParams(sp.n, sp.p, *c), grid, 0, None, tol, 1.0)
        x, _ = _newton(seg, x0, R, inc)
        if not (np.all(x > 0) and event_radius(seg.sp, x) > R):
            raise NoConvergence("homotopy step left the positive branch")
        return x

    c0 = scalar_center(sp.n, sp.p)
    x = solve(0.0, np.array([c0, c0]))
    t, dt, prev = 0.0, 0.25, None
    while t < 1.0:
        t1 = min(1.0, t + dt)
        guess = x if prev is None else x + (x - prev[1]) * (t1 - t) / (t - prev[0])
        try:
            x_new = solve(t1, np.maximum(guess, 1e-3 * x))
        except (NoConvergence, SingularJacobian):
            dt /= 2
            if dt < 1e-4:
                raise NoConvergence(f"homotopy stalled at t={t:.4g}") from None
            continue
        prev, t, x = (t, x), t1, x_new
        dt = min(2 * dt, 0.5)
    return x


def _settle(seg: _Segment, x, R, increments):
    """Newton on free shots, then a polish on the node-landing shot that is kept."""
    x, it = _newton(seg, x, R, increments)
    seg.record = True
    x, it2 = _newton(seg, x, R, increments)
    seg.record = False
    return x, it + it2


def coupled_shoot(params, grid: RadialGrid | None = None, tol: float = 1e-6,
                  guess=None) -> GroundStateResult:
    """Two-parameter shooting on (u1(0), u2(0)).

    Without ``guess`` the centers come from a homotopy in the coefficients
    starting at the symmetric problem.

    The tail defect is v_j(R) + κ(R) u_j(R), with κ the log-slope of the
    decaying solution of the linearized equation, so it vanishes on the
    decaying branch up to nonlinear terms that are negligible at large R.
    Newton is continued in R from 2 to 12. Past the radius where the growing
    mode becomes visible the shot restarts with fixed u and Newton on the
    slopes, exactly like the scalar solver's restarts.
    """
    sp = as_system(params)
    _require_scope(sp)
    if grid is None:
        grid = default_grid(sp.n, sp.p)
    if grid.n != sp.n:
        raise InvalidArgument(f"grid dimension {grid.n} does not match n={sp.n}")
    if not tol > 0:
        raise InvalidArgument("tol must be positive")
    r = np.asarray(grid.nodes)
    m = grid.m
    U = np.zeros((m, 4))
    iterations = 0

    if guess is None:
        guess = _homotopy_guess(sp, grid, tol)
        ladder = [R for R in CONTINUATION if R >= HOMOTOPY_RADIUS]
    else:
        # start the continuation where the guess is still event-free
        r_ev = event_radius(sp, guess)
        ladder = [R for R in CONTINUATION if R <= r_ev - 1.0] or [CONTINUATION[0]]
        ladder = [ladder[-1]] + [R for R in CONTINUATION if R > ladder[-1]]
    seg = _Segment(sp, grid, 0, None, tol, 1.0)
    x = np.array(guess, dtype=float)
    inc0 = lambda x: 1e-6 * (1.0 + np.abs(x))  # noqa: E731
    for R in ladder[:-1]:
        x, it = _newton(seg, x, R, inc0)
        iterations += it
    x, it = _settle(seg, x, ladder[-1], inc0)
    iterations += it
    U[0] = [x[0], x[1], 0.0, 0.0]
    k = 0
    while True:
        r_trust = r[k] + TRUST_LENGTH
        out, nrec, status, _, _, _ = seg.run(x, min(r_trust, grid.r_max))
        if status != kernel.END:
            raise NoConvergence(f"accepted shot failed near r={r[k]:.3g}")
        U[k + 1:k + 1 + nrec] = out[:nrec]
        k_new = k + nrec
        if k_new >= m - 1:
            break
        if nrec == 0:
            raise NoConvergence(f"tail restart stalled at r={r[k]:.4g}")
        k = k_new
        state = U[k, :2]
        scale = float(np.abs(U[k]).sum())
        seg = _Segment(sp, grid, k, state, tol, scale)
        x = U[k, 2:].copy()
        x, it = _settle(seg, x, r[k] + TAIL_LENGTH, lambda x: 1e-6 * np.abs(x) + 1e-30)
        iterations += it
        U[k, 2:] = x

    u1, u2 = RadialProfile(grid, U[:, 0]), RadialProfile(grid, U[:, 1])
    if not (np.all(U[:-1, 0] > 0) and np.all(U[:-1, 1] > 0)):
        raise NoConvergence("shooting converged to a sign-changing pair")
    res = evaluate(u1, u2, sp, iterations=iterations, method="shoot")
    if not res.el_residual <= tol:
        raise NoConvergence(f"shot residual {res.el_residual:.3g} above tol={tol:g}; refine the grid")
    return res


# -- integral form -----------------------------------------------------------

def integral_form_residual(u1: RadialProfile, u2: RadialProfile, params) -> tuple[float, float]:
    """Sup-norm defect of the twice-integrated radial system

        u_j(r) = u_j(0) + ∫_0^r t^{1-n} ∫_0^t s^{n-1} (u_j - rhs_j)(s) ds dt.
    """
    sp = as_system(params)
    g = require_same_grid(u1, u2)
    n, h = g.n, g.h
    r = np.asarray(g.nodes)
    a, b = u1.values, u2.values
    f1, f2 = forcing(a, b, sp)
    out = []
    for u, f in ((a, f1), (b, f2)):
        inner = cumulative_integral(r ** (n - 1) * (u - f), h)
        mid = np.zeros_like(inner)
        mid[1:] = inner[1:] / r[1:] ** (n - 1)
        rebuilt = u[0] + cumulative_integral(mid, h)
        out.append(float(np.max(np.abs(u - rebuilt))))
    return out[0], out[1]


# -- multistart ---------------------------------------------------------------

@dataclass
class MultistartReport:
    runs: list
    failures: list
    max_distance: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "runs": [
                {"index": i, "energy": r.energy, "u0": list(r.u0), "el_residual": r.el_residual}
                if isinstance(r, GroundStateResult) else {"index": i, "error": type(r).__name__, "message": str(r)}
                for i, r in enumerate(self.runs)
            ],
            "failures": self.failures,
            "max_pairwise_l2": self.max_distance,
        }


def uniqueness_multistart(params, grid: RadialGrid | None = None, k: int = 10, seed: int = 0,
                          **descent_kw) -> MultistartReport:
    """Run the descent from ``k`` random positive starts; report the spread."""
    sp = as_system(params)
    if int(k) != k or k < 2:
        raise InvalidArgument("multistart needs k >= 2")
    if grid is None:
        grid = default_grid(sp.n, sp.p)
    runs, failures = [], []
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(int(k))):
        init = gaussian_init(grid, np.random.default_rng(child))
        try:
            runs.append(ground_state_descent(sp, grid, init=init, **descent_kw))
        except SolverError as exc:
            runs.append(exc)
            failures.append(i)
    ok = [r for r in runs if isinstance(r, GroundStateResult)]
    dmax = 0.0
    for i in range(len(ok)):
        for j in range(i + 1, len(ok)):
            dmax = max(dmax, l2_distance(ok[i].u1, ok[i].u2, ok[j].u1, ok[j].u2))
    if len(ok) < 2:
        dmax = math.nan
    return MultistartReport(runs=runs, failures=failures, max_distance=dmax, seed=seed)
