"""Exception hierarchy shared by the solvers and the CLI."""


class SolverError(Exception):
    """Base class for numerical failures (CLI exit status 1)."""


class InvalidArgument(ValueError):
    """Rejected input (CLI exit status 2)."""


class GridMismatch(InvalidArgument):
    """Profiles that must share a grid do not."""


class AssumptionViolation(InvalidArgument):
    """Parameters outside the scope of the uniqueness theorem."""


class NotInM(SolverError):
    """Nonlinear part P <= 0, so the pair cannot be projected onto the Nehari manifold."""


class NoBracket(SolverError):
    """Shooting could not bracket the decaying solution."""


class NoConvergence(SolverError):
    """Iteration budget exhausted."""


class Diverged(SolverError):
    """Descent energy kept increasing after the step safeguard gave up."""


class SingularJacobian(SolverError):
    """Finite-difference Jacobian of the shooting map is numerically singular."""
