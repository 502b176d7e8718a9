import numpy as np
import pytest

from coupled_nls import _pykernel, kernel
from coupled_nls.omega import taylor_start

compiled = pytest.mark.skipif("compiled" not in kernel.backends(), reason="compiled kernel not built")


def shot(impl, n, p, mu, beta, a, nodes, r_end, events):
    h0 = 1e-4
    a = np.asarray(a, dtype=float)
    f = a.copy()
    if len(a) == 1:
        f -= mu[0] * a ** (2 * p + 1)
    else:
        f[0] -= mu[0] * a[0] ** (2 * p + 1) + beta[0] * a[1] ** (p + 1) * a[0] ** p
        f[1] -= mu[1] * a[1] ** (2 * p + 1) + beta[1] * a[0] ** (p + 1) * a[1] ** p
    y0 = taylor_start(n, a, f, h0)
    return impl(n, p, mu, beta, h0, y0, nodes, r_end, 1e-10, 1e-10, events, 1e6)


@compiled
@pytest.mark.parametrize("n, p, mu, beta, a", [
    (1, 1.0, (1.0,), (0.0,), (1.4,)),
    (3, 1.0, (1.0,), (0.0,), (4.3,)),
    (1, 1.0, (-1.0, -2.0), (4.0, 2.0), (1.4, 1.0)),
    (2, 0.5, (0.0, 0.0), (1.0, 1.0), (2.0, 2.5)),
])
@pytest.mark.parametrize("events", [False, True])
def test_backends_agree(n, p, mu, beta, a, events):
    nodes = np.linspace(0.05, 6.0, 120)
    out_c = shot(kernel.backends()["compiled"], n, p, mu, beta, a, nodes, 6.0, events)
    out_p = shot(_pykernel.integrate_radial, n, p, mu, beta, a, nodes, 6.0, events)
    assert out_c[1:3] == out_p[1:3]
    np.testing.assert_allclose(out_c[0][:out_c[1]], out_p[0][:out_p[1]], rtol=1e-12, atol=1e-14)
    assert out_c[3] == pytest.approx(out_p[3], rel=1e-12)


@pytest.mark.parametrize("a, status", [(1.3, kernel.TURN), (1.5, kernel.CROSS)])
def test_event_classification(a, status):
    out = shot(kernel.integrate_radial, 1, 1.0, (1.0,), (0.0,), (a,), (), 40.0, True)
    assert out[2] == status


def test_linear_decay_matches_exponential():
    # u'' = u from u = 1e-8, u' = -1e-8 stays on the decaying exponential
    y0 = np.array([1e-8, -1e-8])
    nodes = np.linspace(0.5, 5.0, 10)
    out, nrec, status, *_ = kernel.integrate_radial(1, 1.0, (0.0,), (0.0,), 0.1, y0, nodes, 5.0,
                                                    1e-20, 1e-12, False, 1.0)
    assert status == kernel.END and nrec == 10
    np.testing.assert_allclose(out[:nrec, 0], 1e-8 * np.exp(0.1 - nodes), rtol=1e-9)


def test_backend_name_is_known():
    assert kernel.BACKEND in ("compiled", "python")
