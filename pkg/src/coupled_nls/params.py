"""Parameter bundles for the scalar equation and the two-component system."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgument

BALANCE_RTOL = 1e-12
BALANCE_ATOL = 1e-14


def check_exponent(n: int, p: float) -> None:
    """Raise unless ``0 < p < 2/(n-2)`` (no upper bound for n <= 2)."""
    if int(n) != n or n < 1:
        raise InvalidArgument(f"dimension must be an integer >= 1, got {n!r}")
    if not (math.isfinite(p) and p > 0):
        raise InvalidArgument(f"exponent p must be positive, got {p!r}")
    if n >= 3 and p >= 2.0 / (n - 2):
        raise InvalidArgument(f"p={p} is not subcritical in dimension {n} (need p < {2.0 / (n - 2)})")


def nearly_equal(a: float, b: float, rtol: float = BALANCE_RTOL, atol: float = BALANCE_ATOL) -> bool:
    return abs(a - b) <= max(rtol * max(abs(a), abs(b)), atol)


@dataclass(frozen=True)
class ScalarParams:
    n: int
    p: float

    def __post_init__(self):
        check_exponent(self.n, self.p)


@dataclass(frozen=True)
class SystemParams:
    """Coefficients of

        u1 - Δu1 = mu1 u1^{2p+1} + beta1 u2^{p+1} u1^p
        u2 - Δu2 = mu2 u2^{2p+1} + beta2 u1^{p+1} u2^p
    """

    n: int
    p: float
    mu1: float
    mu2: float
    beta1: float
    beta2: float

    def __post_init__(self):
        check_exponent(self.n, self.p)
        for name in ("mu1", "mu2", "beta1", "beta2"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgument(f"{name} must be finite")

    @property
    def mu(self) -> tuple[float, float]:
        return (self.mu1, self.mu2)

    @property
    def beta(self) -> tuple[float, float]:
        return (self.beta1, self.beta2)

    @property
    def balanced(self) -> bool:
        """mu1 beta1^p == mu2 beta2^p to the documented tolerance."""
        if self.beta1 <= 0 or self.beta2 <= 0:
            return False
        return nearly_equal(self.mu1 * self.beta1 ** self.p, self.mu2 * self.beta2 ** self.p)

    def effective_coefficients(self) -> tuple[float, float]:
        """mu_j + beta_k^{(p+1)/2} / beta_j^{(p-1)/2} for j = 1, 2."""
        p = self.p
        e1 = self.mu1 + self.beta2 ** ((p + 1) / 2) / self.beta1 ** ((p - 1) / 2)
        e2 = self.mu2 + self.beta1 ** ((p + 1) / 2) / self.beta2 ** ((p - 1) / 2)
        return e1, e2

    @property
    def theorem_scope(self) -> bool:
        if not (self.mu1 <= 0 and self.mu2 <= 0 and self.beta1 > 0 and self.beta2 > 0):
            return False
        if not self.balanced:
            return False
        return self.effective_coefficients()[0] > 0

    # The system is the Euler-Lagrange equation of the energy with the second
    # component weighted by beta1/beta2 and cross coefficient beta1.
    @property
    def weights(self) -> tuple[float, float]:
        if self.beta2 == self.beta1:
            return (1.0, 1.0)
        return (1.0, self.beta1 / self.beta2)

    @property
    def cross(self) -> float:
        return self.beta1 * self.weights[0]

    def swapped(self) -> "SystemParams":
        return SystemParams(self.n, self.p, self.mu2, self.mu1, self.beta2, self.beta1)


@dataclass(frozen=True)
class StandardParams:
    """Normalized case mu1 = mu2 = mu <= 0, beta1 = beta2 = beta, mu + beta > 0."""

    n: int
    p: float
    mu: float
    beta: float

    def __post_init__(self):
        check_exponent(self.n, self.p)
        if self.mu > 0:
            raise InvalidArgument(f"mu must be <= 0, got {self.mu}")
        if not self.mu + self.beta > 0:
            raise InvalidArgument(f"need mu + beta > 0, got {self.mu + self.beta}")

    def to_system(self) -> SystemParams:
        return SystemParams(self.n, self.p, self.mu, self.mu, self.beta, self.beta)
