"""Backend selection for the radial ODE integrator.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``COUPLED_NLS_PURE`` is set to a non-empty value, the
pure-Python implementation is used. Both expose the same
``integrate_radial`` signature.
"""

import os

from . import _pykernel
from ._pykernel import BLOWUP, CROSS, END, FAIL, TURN

__all__ = ["integrate_radial", "BACKEND", "backends", "END", "CROSS", "TURN", "BLOWUP", "FAIL"]

_impls = {"python": _pykernel.integrate_radial}
try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None
else:
    _impls["compiled"] = _ckernel.integrate_radial

if os.environ.get("COUPLED_NLS_PURE") or "compiled" not in _impls:
    BACKEND = "python"
else:
    BACKEND = "compiled"

integrate_radial = _impls[BACKEND]


def backends() -> dict:
    """Available implementations keyed by name."""
    return dict(_impls)
