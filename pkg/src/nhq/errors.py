"""Exception hierarchy for the nhq package."""


class NhqError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(NhqError):
    pass


class DimensionTooLarge(NhqError):
    pass


class InvalidSpec(NhqError):
    pass


class InvalidState(NhqError):
    pass


class PositivityViolation(NhqError):
    pass


class DefectiveMatrix(NhqError):
    """Eigenvector matrix numerically rank-deficient (exceptional point)."""


class NonConvergence(NhqError):
    pass


class StepUnderflow(NhqError):
    """ODE integrator failed within the tolerance budget."""


class NormalizationUnderflow(NhqError):
    """State trace fell below the representable floor (extinct trajectory)."""


class ZeroOverlap(NhqError):
    pass


class DomainError(NhqError):
    pass


class NotApplicable(NhqError):
    pass


class BranchFailure(NhqError):
    """No cube-root branch reproduced the cubic's roots within tolerance."""


class SectorUnresolved(NhqError):
    pass


class GridMismatch(NhqError):
    pass


class InvalidGrid(NhqError):
    pass


class GridTooLarge(NhqError):
    pass


class ConfigError(NhqError):
    pass
