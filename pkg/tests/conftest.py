import numpy as np
import pytest

from coupled_nls.omega import default_grid, omega_closed_form_1d, omega_solve
from coupled_nls.params import ScalarParams
from coupled_nls.radial import make_grid


@pytest.fixture(scope="session")
def grid1():
    return default_grid(1, 1.0)


@pytest.fixture(scope="session")
def sech1(grid1):
    """sqrt(2) sech(r), the exact n=1, p=1 ground state."""
    return omega_closed_form_1d(1.0, grid1)


@pytest.fixture(scope="session")
def omega_cache():
    cache = {}

    def get(n, p, grid=None):
        key = (n, p, None if grid is None else (grid.r_max, grid.m))
        if key not in cache:
            g = default_grid(n, p) if grid is None else grid
            cache[key] = omega_solve(ScalarParams(n, p), g)
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def coarse1():
    return make_grid(1, 12.0, 1201)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Print and record one PASS/FAIL line, then assert the verdict."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def report(number, title, ok, detail):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
        print(line)
        lines.append(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
