"""Assumption checks, the scaling to the standard case and the closed form.

Under mu1 beta1^p = mu2 beta2^p the substitution w1 = u1, w2 = a2 u2 with
a2 = sqrt(beta1/beta2) turns the system into one with equal coefficients
mu = mu1 and beta = beta2^{(p+1)/2} / beta1^{(p-1)/2}. Its ground state is
(c1 ω, c2 ω) with c_j = (mu_j + beta_k^{(p+1)/2} / beta_j^{(p-1)/2})^{-1/(2p)}.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import AssumptionViolation
from .omega import default_grid, omega_solve
from .params import ScalarParams, StandardParams, SystemParams
from .radial import RadialGrid, RadialProfile


@dataclass(frozen=True)
class Diagnostics:
    """Truth value of every hypothesis plus the quantities behind it."""

    mu_nonpositive: bool
    beta_positive: bool
    balanced: bool
    lhs1: float  # mu1 beta1^p
    lhs2: float  # mu2 beta2^p
    effective1: float
    effective2: float
    positive1: bool
    positive2: bool
    # None unless balanced; False flags a floating-point disagreement
    equivalence_holds: bool | None
    passes: bool

    def to_dict(self) -> dict:
        return asdict(self)


def check_assumptions(params: SystemParams) -> Diagnostics:
    """Evaluate the hypotheses of the uniqueness theorem.

    The two positivity conditions are equivalent once the balance condition
    holds; both are evaluated and a disagreement is reported through
    ``equivalence_holds`` instead of silently trusting one of them. The
    verdict ``passes`` uses the first one, like ``SystemParams.theorem_scope``.
    """
    sp = params
    p = sp.p
    beta_pos = sp.beta1 > 0 and sp.beta2 > 0
    if beta_pos:
        e1, e2 = sp.effective_coefficients()
        lhs1, lhs2 = sp.mu1 * sp.beta1 ** p, sp.mu2 * sp.beta2 ** p
    else:
        e1 = e2 = lhs1 = lhs2 = math.nan
    balanced = sp.balanced
    equiv = (e1 > 0) == (e2 > 0) if balanced else None
    return Diagnostics(
        mu_nonpositive=sp.mu1 <= 0 and sp.mu2 <= 0,
        beta_positive=beta_pos,
        balanced=balanced,
        lhs1=lhs1,
        lhs2=lhs2,
        effective1=e1,
        effective2=e2,
        positive1=bool(e1 > 0),
        positive2=bool(e2 > 0),
        equivalence_holds=equiv,
        passes=sp.theorem_scope,
    )


def _require(params: SystemParams) -> None:
    d = check_assumptions(params)
    if not d.passes:
        failed = [k for k in ("mu_nonpositive", "beta_positive", "balanced", "positive1") if not getattr(d, k)]
        raise AssumptionViolation("assumptions fail: " + ", ".join(failed))


@dataclass(frozen=True)
class Reduction:
    standard: StandardParams
    a1: float
    a2: float

    def transformed_coefficients(self, params: SystemParams) -> tuple[float, float, float, float]:
        """(mu1/a1^{2p}, mu2/a2^{2p}, beta1/(a1^{p-1} a2^{p+1}), beta2/(a2^{p-1} a1^{p+1}))."""
        p, a1, a2 = params.p, self.a1, self.a2
        return (
            params.mu1 / a1 ** (2 * p),
            params.mu2 / a2 ** (2 * p),
            params.beta1 / (a1 ** (p - 1) * a2 ** (p + 1)),
            params.beta2 / (a2 ** (p - 1) * a1 ** (p + 1)),
        )

    def to_standard(self, u1: RadialProfile, u2: RadialProfile) -> tuple[RadialProfile, RadialProfile]:
        return u1.scaled(self.a1), u2.scaled(self.a2)

    def from_standard(self, w1: RadialProfile, w2: RadialProfile) -> tuple[RadialProfile, RadialProfile]:
        return w1.scaled(1 / self.a1), w2.scaled(1 / self.a2)

    def to_dict(self) -> dict:
        s = self.standard
        return {"a1": self.a1, "a2": self.a2, "mu": s.mu, "beta": s.beta, "n": s.n, "p": s.p}


def reduce_to_standard(params: SystemParams) -> Reduction:
    """Scaling (a1, a2) = (1, sqrt(beta1/beta2)) onto equal coefficients."""
    _require(params)
    p = params.p
    a2 = math.sqrt(params.beta1 / params.beta2)
    beta = params.beta2 ** ((p + 1) / 2) / params.beta1 ** ((p - 1) / 2)
    return Reduction(StandardParams(params.n, p, params.mu1, beta), 1.0, a2)


def closed_form_amplitudes(params) -> tuple[float, float]:
    """c_j = (mu_j + beta_k^{(p+1)/2} / beta_j^{(p-1)/2})^{-1/(2p)}."""
    sp = params.to_system() if isinstance(params, StandardParams) else params
    _require(sp)
    e1, e2 = sp.effective_coefficients()
    if not (e1 > 0 and e2 > 0):
        raise AssumptionViolation(f"effective coefficients ({e1:.6g}, {e2:.6g}) must be positive")
    q = -1 / (2 * sp.p)
    return e1 ** q, e2 ** q


def closed_form_ground_state(params, grid: RadialGrid | None = None, tol: float = 1e-8,
                             omega: RadialProfile | None = None) -> tuple[RadialProfile, RadialProfile]:
    """(c1 ω, c2 ω) on ``grid``, with ω from the scalar shooting unless given."""
    sp = params.to_system() if isinstance(params, StandardParams) else params
    c1, c2 = closed_form_amplitudes(sp)
    if omega is None:
        if grid is None:
            grid = default_grid(sp.n, sp.p)
        omega = omega_solve(ScalarParams(sp.n, sp.p), grid, tol=tol).omega
    return omega.scaled(c1), omega.scaled(c2)
