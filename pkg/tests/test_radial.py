import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from coupled_nls.errors import GridMismatch, InvalidArgument
from coupled_nls.radial import (
    RadialProfile,
    ball_volume,
    cumulative_integral,
    gradient,
    grid_with_spacing,
    h1_norm_sq,
    integrate,
    l2_norm_sq,
    laplacian_matrix,
    lp_norm,
    make_grid,
    read_profile_csv,
    require_same_grid,
    schwarz_rearrange,
    write_profile_csv,
)


@pytest.mark.parametrize("n, r_max, m, volume", [
    (1, 1.0, 3, 2.0),
    (3, 1.0, 201, 4 * math.pi / 3),
    (2, 2.0, 101, 4 * math.pi),
])
def test_weights_sum_to_ball_volume(n, r_max, m, volume):
    g = make_grid(n, r_max, m)
    assert g.weights.sum() == pytest.approx(volume, rel=1e-10)
    assert np.all(g.weights >= 0)
    assert g.nodes[0] == 0 and g.nodes[-1] == r_max
    assert np.all(np.diff(g.nodes) > 0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("r_max", [0.5, 3.0, 12.0])
def test_quadrature_consistency(n, r_max):
    g = make_grid(n, r_max, 401)
    assert g.weights.sum() == pytest.approx(ball_volume(n, r_max), rel=1e-10)


@pytest.mark.parametrize("args", [(1, 0.0, 5), (1, -1.0, 5), (1, 1.0, 4), (1, 1.0, 1), (0, 1.0, 5)])
def test_make_grid_rejects(args):
    with pytest.raises(InvalidArgument):
        make_grid(*args)


def test_grid_with_spacing_is_odd_and_fine():
    g = grid_with_spacing(2, 7.0, 0.013)
    assert g.m % 2 == 1
    assert g.h <= 0.013


def test_integrate_gaussian_3d():
    g = make_grid(3, 10.0, 2001)
    f = RadialProfile.from_function(g, lambda r: np.exp(-2 * r**2))
    assert integrate(f) == pytest.approx((math.pi / 2) ** 1.5, abs=1e-8)


def test_integrate_sech_squared_1d():
    g = make_grid(1, 30.0, 6001)
    f = RadialProfile.from_function(g, lambda r: 2 / np.cosh(r) ** 2)
    assert integrate(f) == pytest.approx(4.0, abs=1e-8)


def test_integrate_zero(coarse1):
    assert integrate(RadialProfile(coarse1, np.zeros(coarse1.m))) == 0.0


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_simpson_exact_on_cubics(degree):
    # n=1 weights carry no r factor, so polynomials up to degree 3 are exact
    g = make_grid(1, 2.0, 7)
    f = RadialProfile.from_function(g, lambda r: r**degree)
    assert integrate(f) == pytest.approx(2 * 2.0 ** (degree + 1) / (degree + 1), rel=1e-13)


def test_norms_of_sech(sech1):
    assert l2_norm_sq(sech1) == pytest.approx(4.0, abs=1e-6)
    assert h1_norm_sq(sech1) == pytest.approx(16 / 3, abs=1e-4)
    assert lp_norm(sech1, 4) ** 4 == pytest.approx(16 / 3, abs=1e-6)


def test_norms_of_zero(coarse1):
    z = RadialProfile(coarse1, np.zeros(coarse1.m))
    assert l2_norm_sq(z) == 0 and lp_norm(z, 3) == 0 and h1_norm_sq(z) == 0


@pytest.mark.parametrize("q", [0.5, 0.0, -2.0])
def test_lp_norm_rejects_small_q(sech1, q):
    with pytest.raises(InvalidArgument):
        lp_norm(sech1, q)


def test_gradient_second_order():
    errs = []
    for m in (201, 401):
        g = make_grid(1, 4.0, m)
        u = RadialProfile.from_function(g, np.sin)
        errs.append(np.max(np.abs(gradient(u) - np.cos(g.nodes))))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_laplacian_fourth_order(n):
    # Δ e^{-r^2} = (4r^2 - 2n) e^{-r^2}
    errs = []
    for m in (201, 401):
        g = make_grid(n, 6.0, m)
        u = np.exp(-g.nodes**2)
        exact = (4 * g.nodes**2 - 2 * n) * u
        errs.append(np.max(np.abs(laplacian_matrix(g) @ u - exact)))
    assert errs[0] / errs[1] > 12


def test_laplacian_tail_closure_is_exact_for_decay():
    g = make_grid(1, 10.0, 1001)
    u = np.exp(-g.nodes)
    # u'' = u up to the fourth-order truncation, including the last nodes
    assert np.max(np.abs((g.laplacian @ u - u)[-3:])) < 1e-10


def test_profile_rejects_wrong_length(coarse1):
    with pytest.raises(InvalidArgument):
        RadialProfile(coarse1, np.zeros(coarse1.m + 1))


def test_profile_is_read_only(coarse1):
    u = RadialProfile(coarse1, np.ones(coarse1.m))
    with pytest.raises(ValueError):
        u.values[0] = 2.0


def test_grid_mismatch():
    a = RadialProfile(make_grid(1, 1.0, 5), np.ones(5))
    b = RadialProfile(make_grid(1, 2.0, 5), np.ones(5))
    with pytest.raises(GridMismatch):
        require_same_grid(a, b)


def test_csv_roundtrip(tmp_path, sech1):
    path = tmp_path / "u.csv"
    write_profile_csv(path, sech1)
    assert path.read_text().splitlines()[0] == "r,value"
    r, v = read_profile_csv(path)
    np.testing.assert_array_equal(r, sech1.grid.nodes)
    np.testing.assert_array_equal(v, sech1.values)


def test_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x,y\n0,1\n")
    with pytest.raises(InvalidArgument):
        read_profile_csv(path)


def test_cumulative_integral_order():
    errs = []
    for m in (101, 201):
        x = np.linspace(0, 3, m)
        F = cumulative_integral(np.cos(x), x[1] - x[0])
        errs.append(np.max(np.abs(F - np.sin(x))))
    assert math.log2(errs[0] / errs[1]) > 3.5


# -- rearrangement ------------------------------------------------------------

def hardy_littlewood_gap(u, v, x):
    us, vs = schwarz_rearrange(u, coords=x), schwarz_rearrange(v, coords=x)
    return np.dot(us, vs) - np.dot(u, v)


def dirichlet(u, h):
    return np.sum(np.diff(u) ** 2) / h


def test_rearrange_symmetric_profile_is_fixed(sech1):
    out = schwarz_rearrange(sech1)
    np.testing.assert_array_equal(out.values, sech1.values)


def test_rearrange_sort_semantics():
    x = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    out = schwarz_rearrange(np.array([0.0, 3.0, 1.0, 2.0, 0.0]), coords=x)
    assert out[2] == 3.0
    assert sorted(out) == [0, 0, 1, 2, 3]
    order = np.argsort(np.abs(x), kind="stable")
    assert np.all(np.diff(out[order]) <= 0)


def test_rearrange_symmetric_line_function_is_fixed():
    x = np.linspace(-3, 3, 61)
    u = np.exp(-x**2)
    np.testing.assert_allclose(schwarz_rearrange(u, coords=x), u, rtol=0, atol=0)


def test_rearrange_2d_array_centre_holds_max(rng):
    a = rng.uniform(size=(7, 9))
    out = schwarz_rearrange(a)
    assert out[3, 4] == a.max()
    np.testing.assert_array_equal(np.sort(out.ravel()), np.sort(a.ravel()))


def test_rearrange_rejects_negative(coarse1):
    with pytest.raises(InvalidArgument):
        schwarz_rearrange(np.array([1.0, -0.1, 2.0]))
    with pytest.raises(InvalidArgument):
        schwarz_rearrange(RadialProfile(coarse1, -np.ones(coarse1.m)))


def test_rearrange_rejects_nonuniform_coords():
    with pytest.raises(InvalidArgument):
        schwarz_rearrange(np.ones(4), coords=np.array([-1.0, 0.0, 0.5, 2.0]))


samples = arrays(np.float64, st.integers(2, 60), elements=st.floats(0, 10, allow_nan=False))


@settings(max_examples=100, deadline=None)
@given(samples, st.sampled_from([1.0, 2.0, 3.5]))
def test_rearrange_preserves_lp_norms(u, q):
    x = np.arange(u.size) - (u.size - 1) / 2
    us = schwarz_rearrange(u, coords=x)
    np.testing.assert_array_equal(np.sort(us), np.sort(u))
    assert np.sum(us**q) == pytest.approx(np.sum(u**q), rel=1e-12, abs=0)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 50).flatmap(lambda k: st.tuples(
    arrays(np.float64, k, elements=st.floats(0, 5)), arrays(np.float64, k, elements=st.floats(0, 5)))))
def test_hardy_littlewood(uv):
    u, v = uv
    x = np.arange(u.size) - (u.size - 1) / 2
    assert hardy_littlewood_gap(u, v, x) >= -1e-12 * (1 + np.dot(u, v))


@pytest.mark.parametrize("k", range(1, 9))
def test_hardy_littlewood_exhaustive(k, rng):
    # the rearranged pair maximizes the sum over every permutation of v
    x = np.arange(k) - (k - 1) / 2
    u, v = rng.uniform(size=k), rng.uniform(size=k)
    us, vs = schwarz_rearrange(u, coords=x), schwarz_rearrange(v, coords=x)
    best = max(np.dot(u, v[list(perm)]) for perm in itertools.permutations(range(k)))
    assert np.dot(us, vs) >= best - 1e-12


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.integers(3, 80), elements=st.floats(0, 5)))
def test_polya_szego_discrete(u):
    x = np.arange(u.size) * 0.1
    x = x - x.mean()
    h = 0.1
    us = schwarz_rearrange(u, coords=x)
    assert dirichlet(us, h) <= dirichlet(u, h) * (1 + 10 * h) + 1e-12
