"""Sharp Gagliardo-Nirenberg constants and the quotient they bound.

For the equal-coefficient system the vector inequality

    mu Σ||u_j||_{2p+2}^{2p+2} + 2 beta ||u1 u2||_{p+1}^{p+1}
        <= K_vec (Σ||u_j||_2^2)^{p+1-np/2} (Σ||∇u_j||_2^2)^{np/2}

holds with K_vec = (mu + beta)/2^p K_scalar, where K_scalar is the sharp
scalar constant expressed through ||ω||_2. The quotient J below is the
ratio of the right side (without K) to the left; its infimum over pairs
with positive left side is 1/K_vec.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .coupled import integrals
from .errors import InvalidArgument, NotInM
from .omega import default_grid, omega_solve
from .params import ScalarParams, StandardParams, check_exponent
from .radial import RadialGrid, RadialProfile, l2_norm_sq, require_same_grid
from .reduction import closed_form_ground_state

DEFAULT_SEED = 42


def _check_gn_exponent(n: int, p: float) -> None:
    if not n * p < 2 * p + 2:
        raise InvalidArgument(f"need n p < 2p + 2, got n={n}, p={p}")
    check_exponent(n, p)


def k_scalar(n: int, p: float, omega: RadialProfile) -> float:
    """K_{n,p} = 2(p+1) / [(np)^{np/2} (2p+2-np)^{1-np/2} ||ω||_2^{2p}]."""
    _check_gn_exponent(n, p)
    if omega.grid.n != n:
        raise InvalidArgument(f"omega lives in dimension {omega.grid.n}, not {n}")
    mass = l2_norm_sq(omega)
    s = n * p
    return 2 * (p + 1) / (s ** (s / 2) * (2 * p + 2 - s) ** (1 - s / 2) * mass**p)


def k_vector(n: int, p: float, mu: float, beta: float, omega: RadialProfile) -> float:
    """(mu + beta)/2^p times the scalar constant."""
    if mu > 0 or not mu + beta > 0:
        raise InvalidArgument(f"need mu <= 0 and mu + beta > 0, got mu={mu}, beta={beta}")
    return (mu + beta) / 2**p * k_scalar(n, p, omega)


def _parts(u1: RadialProfile, u2: RadialProfile, params: StandardParams) -> tuple[float, float, float]:
    I = integrals(u1, u2, params.p)
    mass = I.mass[0] + I.mass[1]
    grad = I.grad[0] + I.grad[1]
    P2 = params.mu * (I.power[0] + I.power[1]) + 2 * params.beta * I.cross
    return mass, grad, P2


def j_quotient(u1: RadialProfile, u2: RadialProfile, params: StandardParams) -> float:
    """J(u) = (Σ mass)^{p+1-np/2} (Σ grad)^{np/2} / P2.

    Raises
    ------
    NotInM
        If P2 <= 0.
    """
    n, p = params.n, params.p
    mass, grad, P2 = _parts(u1, u2, params)
    if not P2 > 0:
        raise NotInM(f"P2={P2:.6g} is not positive")
    return mass ** (p + 1 - n * p / 2) * grad ** (n * p / 2) / P2


def pohozaev_check(u1: RadialProfile, u2: RadialProfile, params: StandardParams,
                   solution: bool = False) -> float:
    """Relative defect of (n-2)/2 G + n/2 M = n/(2p+2) P2.

    With ``solution=True`` the defect of G = np/(2p+2-np) M, which only holds
    on solutions, is included and the larger defect is returned.
    """
    require_same_grid(u1, u2)
    n, p = params.n, params.p
    mass, grad, P2 = _parts(u1, u2, params)

    def rel(a, b):
        s = max(abs(a), abs(b))
        return abs(a - b) / s if s > 0 else 0.0

    d = rel((n - 2) / 2 * grad + n / 2 * mass, n / (2 * p + 2) * P2)
    if solution:
        d = max(d, rel(grad, n * p / (2 * p + 2 - n * p) * mass))
    return d


@dataclass
class GNReport:
    k_scalar: float
    k_vector: float
    alpha: float
    samples: int
    min_quotient: float
    violations: int
    crude_violations: int
    ground_state_quotient: float
    ground_state_gap: float
    tol_rel: float
    seed: int
    rejected: int

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.crude_violations == 0 and self.ground_state_gap <= self.tol_rel

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def gaussian_mixture(grid: RadialGrid, rng: np.random.Generator) -> RadialProfile:
    """Sum of 1-3 centred Gaussians, amplitudes in [0.1, 3], widths in [0.3, 3]."""
    r = np.asarray(grid.nodes)
    k = int(rng.integers(1, 4))
    amp = rng.uniform(0.1, 3.0, size=k)
    width = rng.uniform(0.3, 3.0, size=k)
    return RadialProfile(grid, (amp[:, None] * np.exp(-(r[None, :] / width[:, None]) ** 2)).sum(axis=0))


def sample_pair(grid: RadialGrid, params: StandardParams, rng: np.random.Generator,
                max_tries: int = 1000) -> tuple[RadialProfile, RadialProfile, int]:
    """Draw pairs until P2 > 0; also returns the number of rejections."""
    for tries in range(max_tries):
        u1, u2 = gaussian_mixture(grid, rng), gaussian_mixture(grid, rng)
        if _parts(u1, u2, params)[2] > 0:
            return u1, u2, tries
    raise NotInM(f"no sample with positive P2 after {max_tries} draws")


def verify_inequality(params: StandardParams, grid: RadialGrid | None = None, samples: int = 1000,
                      seed: int = DEFAULT_SEED, tol_rel: float = 1e-3, omega: RadialProfile | None = None,
                      include_ground_state: bool = True, quotient_csv: str | Path | None = None) -> GNReport:
    """Check J >= alpha (1 - tol_rel) on random pairs, with alpha = 1/K_vec.

    Every sample is also checked against the weaker bound obtained from
    Hölder's inequality, P2 <= (mu + beta) K_scalar (mass)^{..} (grad)^{..}.
    Each sample draws from its own child of ``SeedSequence(seed)``, so the
    result does not depend on evaluation order.
    """
    if int(samples) != samples or samples < 1:
        raise InvalidArgument("samples must be a positive integer")
    n, p = params.n, params.p
    if grid is None:
        grid = default_grid(n, p)
    if omega is None:
        omega = omega_solve(ScalarParams(n, p), grid).omega
    ks = k_scalar(n, p, omega)
    kv = k_vector(n, p, params.mu, params.beta, omega)
    alpha = 1 / kv
    crude = 1 / ((params.mu + params.beta) * ks)

    rows = []
    violations = crude_violations = rejected = 0
    qmin = math.inf
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(int(samples))):
        u1, u2, tries = sample_pair(grid, params, np.random.default_rng(child))
        rejected += tries
        q = j_quotient(u1, u2, params)
        violations += q < alpha * (1 - tol_rel)
        crude_violations += q < crude * (1 - tol_rel)
        qmin = min(qmin, q)
        rows.append((i, q))

    gs = closed_form_ground_state(params, omega=omega)
    q_gs = j_quotient(*gs, params)
    if include_ground_state:
        qmin = min(qmin, q_gs)
        rows.append((-1, q_gs))

    if quotient_csv is not None:
        with open(quotient_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sample_id", "quotient"])
            for i, q in rows:
                w.writerow([i, f"{q:.17g}"])

    return GNReport(
        k_scalar=ks,
        k_vector=kv,
        alpha=alpha,
        samples=int(samples),
        min_quotient=qmin,
        violations=int(violations),
        crude_violations=int(crude_violations),
        ground_state_quotient=q_gs,
        ground_state_gap=abs(q_gs - alpha) / alpha,
        tol_rel=tol_rel,
        seed=seed,
        rejected=rejected,
    )
