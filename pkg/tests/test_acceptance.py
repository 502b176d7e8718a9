"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import math
import time

import numpy as np

from coupled_nls.coupled import (
    coupled_shoot,
    el_residual,
    ground_state_descent,
    integral_form_residual,
    l2_distance,
    uniqueness_multistart,
)
from coupled_nls.gn import k_scalar, verify_inequality
from coupled_nls.omega import default_grid, omega_closed_form_1d, omega_solve
from coupled_nls.params import ScalarParams, StandardParams, SystemParams
from coupled_nls.radial import grid_with_spacing, schwarz_rearrange
from coupled_nls.reduction import closed_form_amplitudes, closed_form_ground_state, reduce_to_standard

SEED = 20240611


def test_criterion_1_scalar_closed_form(criterion):
    worst, slowest = 0.0, 0.0
    for p in (0.5, 1.0, 2.0):
        g = default_grid(1, p)
        t = time.perf_counter()
        w = omega_solve(ScalarParams(1, p), g).omega
        slowest = max(slowest, time.perf_counter() - t)
        worst = max(worst, np.max(np.abs(w.values - omega_closed_form_1d(p, g).values)))
    criterion(1, "1-D scalar ground state matches the closed form", worst <= 1e-6 and slowest < 1.0,
              f"sup error {worst:.2e} <= 1e-6, slowest solve {slowest:.2f} s < 1 s")


def test_criterion_2_sharp_scalar_constant(criterion):
    k11 = k_scalar(1, 1.0, omega_solve(ScalarParams(1, 1.0)).omega)
    k12 = k_scalar(1, 2.0, omega_solve(ScalarParams(1, 2.0)).omega)
    e11, e12 = abs(k11 - 1 / math.sqrt(3)), abs(k12 - 4 / math.pi**2)
    criterion(2, "sharp scalar constants", e11 <= 1e-5 and e12 <= 1e-4,
              f"|K11 - 3^-1/2| = {e11:.1e} <= 1e-5, |K12 - 4/pi^2| = {e12:.1e} <= 1e-4")


SCOPE_CASES = [
    (1, 1.0, 0.0, 0.0, 1.0, 1.0),
    (1, 1.0, -1.0, -1.0, 2.0, 2.0),
    (1, 1.0, -1.0, -2.0, 4.0, 2.0),
    (1, 0.5, -0.5, -0.5, 1.0, 1.0),
    (2, 1.0, -1.0, -2.0, 4.0, 2.0),
    (3, 1.0, 0.0, 0.0, 3.0, 1.0),
]


def test_criterion_3_solver_matrix(criterion):
    dist = resid = slowest = 0.0
    for case in SCOPE_CASES:
        sp = SystemParams(*case)
        g = default_grid(sp.n, sp.p)
        t0 = time.perf_counter()
        omega = omega_solve(ScalarParams(sp.n, sp.p), g).omega
        t_omega = time.perf_counter() - t0
        exact = closed_form_ground_state(sp, omega=omega)
        for solver in (ground_state_descent, coupled_shoot):
            t = time.perf_counter()
            res = solver(sp, g)
            slowest = max(slowest, t_omega + time.perf_counter() - t)
            dist = max(dist, l2_distance(res.u1, res.u2, *exact))
            resid = max(resid, res.el_residual / max(res.u0), res.nehari_residual, res.pohozaev_residual)
    ok = dist <= 1e-4 and resid <= 1e-5 and slowest < 10.0
    criterion(3, "both solvers reach the closed form on 6 cases", ok,
              f"L2 distance {dist:.1e} <= 1e-4, worst relative residual {resid:.1e} <= 1e-5, "
              f"slowest case {slowest:.1f} s < 10 s")


def test_criterion_4_multistart(criterion):
    rep = uniqueness_multistart(SystemParams(1, 1.0, 0.0, 0.0, 1.0, 1.0), k=10, seed=SEED)
    ok = not rep.failures and rep.max_distance < 1e-4
    criterion(4, "10-start multistart lands on one state", ok,
              f"max pairwise L2 {rep.max_distance:.1e} < 1e-4, failures {len(rep.failures)}")


def test_criterion_5_vector_inequality(criterion):
    t = time.perf_counter()
    rep = verify_inequality(StandardParams(1, 1.0, 0.0, 1.0), samples=1000, seed=42)
    elapsed = time.perf_counter() - t
    gap = abs(rep.ground_state_quotient - 2 * math.sqrt(3)) / (2 * math.sqrt(3))
    ok = (rep.violations == 0 and rep.crude_violations == 0 and gap <= 1e-3
          and abs(rep.alpha - 2 * math.sqrt(3)) <= 1e-3 * 2 * math.sqrt(3) and elapsed < 30)
    criterion(5, "vector inequality on 1000 seeded samples", ok,
              f"violations {rep.violations}, crude violations {rep.crude_violations}, "
              f"ground-state gap {gap:.1e} <= 1e-3, {elapsed:.1f} s < 30 s")


def random_scope(rng):
    n = int(rng.integers(1, 4))
    p = float(rng.choice([0.5, 1.0, 1.5]))
    while True:
        b1, b2 = rng.uniform(0.1, 10.0, size=2)
        mu1 = -rng.uniform(0.0, 3.0)
        sp = SystemParams(n, p, mu1, mu1 * b1**p / b2**p, b1, b2)
        if sp.theorem_scope:
            return sp


RESIDUAL_CASES = [
    ((1, 1.0, -1.0, -2.0, 4.0, 2.0), None),
    ((1, 0.5, -0.5, -1.0, 4.0, 1.0), None),
    ((1, 2.0, -1.0, -4.0, 4.0, 2.0), None),
    ((2, 1.0, -1.0, -2.0, 4.0, 2.0), 0.00125),
]


def test_criterion_6_reduction_roundtrip(criterion):
    rng = np.random.default_rng(SEED)
    worst_rel = 0.0
    for _ in range(500):
        sp = random_scope(rng)
        red = reduce_to_standard(sp)
        cs = closed_form_amplitudes(red.standard)
        back = (cs[0] / red.a1, cs[1] / red.a2)
        want = closed_form_amplitudes(sp)
        worst_rel = max(worst_rel, *(abs(b - w) / w for b, w in zip(back, want)))
    worst_res = 0.0
    for case, h in RESIDUAL_CASES:
        sp = SystemParams(*case)
        g = default_grid(sp.n, sp.p) if h is None else default_grid(sp.n, sp.p, spacing=h)
        omega = omega_solve(ScalarParams(sp.n, sp.p), g).omega
        red = reduce_to_standard(sp)
        cs = closed_form_amplitudes(red.standard)
        u1, u2 = red.from_standard(omega.scaled(cs[0]), omega.scaled(cs[1]))
        worst_res = max(worst_res, el_residual(u1, u2, sp))
    criterion(6, "scaling reduction roundtrip", worst_rel <= 1e-12 and worst_res <= 1e-8,
              f"amplitude error {worst_rel:.1e} <= 1e-12 over 500 inputs, "
              f"residual {worst_res:.1e} <= 1e-8")


def random_profiles(rng, count, size):
    x = (np.arange(size) - (size - 1) / 2) * 0.1
    out = []
    for i in range(count):
        if i % 2:
            out.append(rng.exponential(size=size))
        else:
            c, w, a = rng.uniform(-2, 2, 3), rng.uniform(0.2, 2, 3), rng.uniform(0, 3, 3)
            out.append(np.sum(a[:, None] * np.exp(-((x[None] - c[:, None]) / w[:, None]) ** 2), axis=0))
    return x, out


def test_criterion_7_rearrangement(criterion):
    rng = np.random.default_rng(SEED)
    h = 0.1
    x, profiles = random_profiles(rng, 100, 81)
    stars = [schwarz_rearrange(u, coords=x) for u in profiles]
    multiset = all(np.array_equal(np.sort(s), np.sort(u)) for s, u in zip(stars, profiles))
    hl = all(np.dot(stars[i], stars[j]) >= np.dot(profiles[i], profiles[j]) * (1 - 1e-14)
             for i, j in itertools.combinations(range(100), 2))
    dirichlet = lambda u: np.sum(np.diff(u) ** 2) / h
    ps = all(dirichlet(s) <= dirichlet(u) * (1 + 10 * h) for s, u in zip(stars, profiles))
    exhaustive = True
    for k in range(1, 9):
        xk = np.arange(k) - (k - 1) / 2
        for _ in range(5):
            u, v = rng.uniform(size=k), rng.uniform(size=k)
            best = max(np.dot(u, v[list(perm)]) for perm in itertools.permutations(range(k)))
            got = np.dot(schwarz_rearrange(u, coords=xk), schwarz_rearrange(v, coords=xk))
            exhaustive &= bool(got >= best - 1e-12)
    criterion(7, "rearrangement properties", multiset and hl and ps and exhaustive,
              f"value multisets {multiset}, Hardy-Littlewood on 4950 pairs {hl}, "
              f"Polya-Szego within 10h {ps}, exhaustive k <= 8 {exhaustive}")


def test_criterion_8_refinement(criterion):
    sp = StandardParams(1, 1.0, 0.0, 1.0)
    res = []
    for h in (0.04, 0.02, 0.01):
        w = omega_closed_form_1d(1.0, grid_with_spacing(1, 12.0, h))
        res.append(integral_form_residual(w, w, sp)[0])
    orders = [math.log2(a / b) for a, b in zip(res, res[1:])]
    criterion(8, "integral-form residual refinement", min(orders) >= 3.5,
              "observed orders " + ", ".join(f"{o:.2f}" for o in orders) + " >= 3.5")
