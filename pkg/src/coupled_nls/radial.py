"""Uniform radial grids, quadrature and differentiation for radial functions on R^n.

Every integral over R^n of a radial function f is realized as
``sum_k w_k f(r_k)`` with composite Simpson weights carrying the measure
``|S^{n-1}| r^{n-1} dr``. In one dimension the profile is the restriction of
an even function to [0, inf), the unit "sphere" is {-1, 1} and |S^0| = 2,
so all norms are full-line norms.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import sparse
from scipy.special import kve

from .errors import GridMismatch, InvalidArgument


def sphere_area(n: int) -> float:
    """Area of the unit sphere S^{n-1} in R^n (2 for n = 1)."""
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def ball_volume(n: int, r: float) -> float:
    return sphere_area(n) * r**n / n


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RadialGrid:
    n: int
    r_max: float
    m: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def h(self) -> float:
        return self.r_max / (self.m - 1)

    def same_as(self, other: "RadialGrid") -> bool:
        return self is other or (self.n == other.n and self.m == other.m and self.r_max == other.r_max)

    @cached_property
    def laplacian(self) -> sparse.csr_matrix:
        return laplacian_matrix(self)

    def to_dict(self) -> dict:
        return {"n": self.n, "r_max": self.r_max, "m": self.m, "h": self.h}


def make_grid(n: int, r_max: float, m: int) -> RadialGrid:
    """Uniform grid on [0, r_max] with ``m`` nodes (odd, for composite Simpson)."""
    if int(n) != n or n < 1:
        raise InvalidArgument(f"dimension must be an integer >= 1, got {n!r}")
    if not (math.isfinite(r_max) and r_max > 0):
        raise InvalidArgument(f"r_max must be positive, got {r_max!r}")
    if int(m) != m or m < 3:
        raise InvalidArgument(f"need at least 3 nodes, got {m!r}")
    if m % 2 == 0:
        raise InvalidArgument(f"composite Simpson needs an odd node count, got {m}")
    n, m = int(n), int(m)
    r = np.linspace(0.0, r_max, m)
    h = r_max / (m - 1)
    s = np.full(m, 2.0)
    s[1::2] = 4.0
    s[0] = s[-1] = 1.0
    w = s * (h / 3.0) * sphere_area(n) * r ** (n - 1)
    return RadialGrid(n=n, r_max=float(r_max), m=m, nodes=_frozen(r), weights=_frozen(w))


def grid_with_spacing(n: int, r_max: float, h: float) -> RadialGrid:
    """Grid whose spacing is at most ``h`` (node count rounded up to odd)."""
    m = int(math.ceil(r_max / h)) + 1
    if m % 2 == 0:
        m += 1
    return make_grid(n, r_max, max(m, 3))


@dataclass(frozen=True, eq=False)
class RadialProfile:
    grid: RadialGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.m,):
            raise InvalidArgument(f"expected {self.grid.m} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidArgument("profile values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, grid: RadialGrid, f) -> "RadialProfile":
        return cls(grid, f(np.asarray(grid.nodes)))

    @property
    def r(self) -> np.ndarray:
        return self.grid.nodes

    def scaled(self, s: float) -> "RadialProfile":
        return RadialProfile(self.grid, s * self.values)

    def __abs__(self) -> "RadialProfile":
        return RadialProfile(self.grid, np.abs(self.values))

    def __call__(self, r):
        return np.interp(r, self.grid.nodes, self.values)


def require_same_grid(*profiles: RadialProfile) -> RadialGrid:
    g = profiles[0].grid
    for q in profiles[1:]:
        if not g.same_as(q.grid):
            raise GridMismatch("profiles live on different grids")
    return g


def integrate_values(grid: RadialGrid, values) -> float:
    return float(np.dot(grid.weights, values))


def integrate(f: RadialProfile) -> float:
    """Quadrature of a radial function over R^n.

    The tail beyond ``r_max`` is dropped; callers pick r_max large enough.
    """
    return integrate_values(f.grid, f.values)


def gradient(u: RadialProfile) -> np.ndarray:
    """du/dr by second-order central differences, one-sided at both ends."""
    return np.gradient(u.values, u.grid.h, edge_order=2)


def l2_norm_sq(u: RadialProfile) -> float:
    return integrate_values(u.grid, u.values**2)


def lp_norm(u: RadialProfile, q: float) -> float:
    if not q >= 1:
        raise InvalidArgument(f"lp_norm needs q >= 1, got {q}")
    return integrate_values(u.grid, np.abs(u.values) ** q) ** (1.0 / q)


def grad_norm_sq(u: RadialProfile) -> float:
    return integrate_values(u.grid, gradient(u) ** 2)


def h1_norm_sq(u: RadialProfile) -> float:
    return grad_norm_sq(u) + l2_norm_sq(u)


# Fourth-order stencils, offsets -2..2.
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def decay_ratio(n: int, r0: float, r1):
    """w(r1)/w(r0) for the decaying solution w = r^{1-n/2} K_{n/2-1}(r)."""
    nu = n / 2 - 1
    r1 = np.asarray(r1, dtype=float)
    return (r1 / r0) ** (1 - n / 2) * kve(nu, r1) / kve(nu, r0) * np.exp(r0 - r1)


def laplacian_matrix(grid: RadialGrid) -> sparse.csr_matrix:
    """Fourth-order radial Laplacian u'' + (n-1)/r u'.

    Values are reflected evenly across r = 0. Beyond r_max they continue
    along the decaying solution of u'' + (n-1)/r u' = u, which is what a
    ground state looks like there. At the origin the operator is n u''(0).
    """
    m, n, h = grid.m, grid.n, grid.h
    r = np.asarray(grid.nodes)
    rows, cols, vals = [], [], []
    for j, off in enumerate(range(-2, 3)):
        k = np.arange(m)
        if n == 1:
            c = np.full(m, _D2[j] / h**2)
        else:
            c = np.empty(m)
            c[1:] = _D2[j] / h**2 + (n - 1) / r[1:] * _D1[j] / h
            c[0] = n * _D2[j] / h**2
        idx = np.abs(k + off)
        ghost = idx >= m
        c[ghost] *= decay_ratio(n, grid.r_max, grid.r_max + (idx[ghost] - (m - 1)) * h)
        rows.append(k)
        cols.append(np.minimum(idx, m - 1))
        vals.append(c)
    A = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(m, m)
    )
    return A.tocsr()


def interior(grid: RadialGrid) -> slice:
    """Nodes whose Laplacian stencil does not reach past r_max."""
    return slice(0, grid.m - 2)


def schwarz_rearrange(u, coords=None):
    """Discrete symmetric-decreasing rearrangement.

    For a :class:`RadialProfile` the node order already is the order of
    increasing ball volume, so the samples are sorted non-increasingly.
    For an array of samples on a uniform Cartesian grid the values are sorted
    non-increasingly and handed out to cells in order of increasing distance
    from the centre (ties broken by flat index). ``coords`` optionally gives
    the 1-D node positions; otherwise the array centre is the origin.
    """
    if isinstance(u, RadialProfile):
        if np.any(u.values < 0):
            raise InvalidArgument("rearrangement needs nonnegative samples")
        return RadialProfile(u.grid, np.sort(u.values)[::-1])

    a = np.asarray(u, dtype=float)
    if a.size == 0:
        return a.copy()
    if np.any(a < 0) or not np.all(np.isfinite(a)):
        raise InvalidArgument("rearrangement needs finite nonnegative samples")
    if coords is not None:
        x = np.asarray(coords, dtype=float)
        if a.ndim != 1 or x.shape != a.shape:
            raise InvalidArgument("coords must be 1-D and match the samples")
        if x.size > 2:
            dx = np.diff(x)
            if not np.allclose(dx, dx[0], rtol=1e-9, atol=0.0) or dx[0] <= 0:
                raise InvalidArgument("rearrangement is only defined on uniform grids")
        dist = np.abs(x)
    else:
        axes = np.meshgrid(*[np.arange(s) - (s - 1) / 2.0 for s in a.shape], indexing="ij")
        dist = np.sqrt(sum(ax**2 for ax in axes))
    order = np.argsort(dist.ravel(), kind="stable")
    out = np.empty(a.size)
    out[order] = np.sort(a.ravel())[::-1]
    return out.reshape(a.shape)


def write_profile_csv(path, profile: RadialProfile) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "value"])
        for r, v in zip(profile.grid.nodes, profile.values):
            w.writerow([f"{r:.17g}", f"{v:.17g}"])


def read_profile_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Return (r, value) columns of an ``r,value`` CSV file."""
    rs, vs = [], []
    with open(Path(path), newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["r", "value"]:
            raise InvalidArgument(f"{path}: expected header 'r,value'")
        for row in reader:
            if not row:
                continue
            rs.append(float(row[0]))
            vs.append(float(row[1]))
    return np.array(rs), np.array(vs)


def cumulative_integral(values, h: float) -> np.ndarray:
    """F_k = ∫_0^{r_k} f on a uniform grid, fourth order.

    Each panel integrates the cubic through the four nearest nodes
    (one-sided cubics on the first and last panel).
    """
    f = np.asarray(values, dtype=float)
    m = f.shape[-1]
    if m < 2:
        return np.zeros_like(f)
    if m == 2:
        panels = 0.5 * h * (f[..., :1] + f[..., 1:])
    elif m == 3:
        panels = np.stack(
            [h / 12 * (5 * f[..., 0] + 8 * f[..., 1] - f[..., 2]),
             h / 12 * (-f[..., 0] + 8 * f[..., 1] + 5 * f[..., 2])], axis=-1)
    else:
        panels = np.empty(f.shape[:-1] + (m - 1,))
        panels[..., 1:-1] = h / 24 * (-f[..., :-3] + 13 * f[..., 1:-2] + 13 * f[..., 2:-1] - f[..., 3:])
        panels[..., 0] = h / 24 * (9 * f[..., 0] + 19 * f[..., 1] - 5 * f[..., 2] + f[..., 3])
        panels[..., -1] = h / 24 * (9 * f[..., -1] + 19 * f[..., -2] - 5 * f[..., -3] + f[..., -4])
    out = np.zeros_like(f)
    out[..., 1:] = np.cumsum(panels, axis=-1)
    return out
