"""Ground states of two-component coupled NLS systems.

Radial grids and quadrature live in :mod:`~coupled_nls.radial`, the scalar
ground state in :mod:`~coupled_nls.omega`, the coupled solvers in
:mod:`~coupled_nls.coupled`, the scaling reduction and closed form in
:mod:`~coupled_nls.reduction` and the Gagliardo-Nirenberg tools in
:mod:`~coupled_nls.gn`.
"""

__version__ = "0.1.0"

from .coupled import (  # noqa: E402
    GroundStateResult,
    coupled_shoot,
    energy,
    ground_state_descent,
    integral_form_residual,
    nehari_quantities,
    nehari_scale,
    uniqueness_multistart,
)
from .errors import (  # noqa: E402
    AssumptionViolation,
    Diverged,
    GridMismatch,
    InvalidArgument,
    NoBracket,
    NoConvergence,
    NotInM,
    SingularJacobian,
    SolverError,
)
from .gn import GNReport, j_quotient, k_scalar, k_vector, pohozaev_check, verify_inequality  # noqa: E402
from .kernel import BACKEND  # noqa: E402
from .omega import ShootResult, omega_closed_form_1d, omega_solve  # noqa: E402
from .params import ScalarParams, StandardParams, SystemParams  # noqa: E402
from .radial import (  # noqa: E402
    RadialGrid,
    RadialProfile,
    h1_norm_sq,
    integrate,
    l2_norm_sq,
    lp_norm,
    make_grid,
    schwarz_rearrange,
)
from .reduction import (  # noqa: E402
    Reduction,
    check_assumptions,
    closed_form_amplitudes,
    closed_form_ground_state,
    reduce_to_standard,
)

__all__ = [
    "__version__",
    "GroundStateResult",
    "coupled_shoot",
    "energy",
    "ground_state_descent",
    "integral_form_residual",
    "nehari_quantities",
    "nehari_scale",
    "uniqueness_multistart",
    "AssumptionViolation",
    "Diverged",
    "GridMismatch",
    "InvalidArgument",
    "NoBracket",
    "NoConvergence",
    "NotInM",
    "SingularJacobian",
    "SolverError",
    "RadialGrid",
    "RadialProfile",
    "h1_norm_sq",
    "integrate",
    "l2_norm_sq",
    "lp_norm",
    "make_grid",
    "schwarz_rearrange",
    "Reduction",
    "check_assumptions",
    "closed_form_amplitudes",
    "closed_form_ground_state",
    "reduce_to_standard",
    "GNReport",
    "j_quotient",
    "k_scalar",
    "k_vector",
    "pohozaev_check",
    "verify_inequality",
    "BACKEND",
    "ShootResult",
    "omega_closed_form_1d",
    "omega_solve",
    "ScalarParams",
    "StandardParams",
    "SystemParams",
]
