"""Exception hierarchy shared by all pvtsi modules."""


class PVTSIError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PVTSIError, ValueError):
    """Invalid user-supplied parameters or configuration."""


class JetMismatchError(PVTSIError, ValueError):
    """Two jets with different centers or orders were combined."""


class JetDomainError(PVTSIError, ValueError):
    """An elementary function was applied outside its domain."""


class JetDivisionError(JetDomainError, ZeroDivisionError):
    """Division by a jet whose constant term is zero."""


class NonintegrableEndpointError(ValidationError):
    """Endpoint exponent c <= -1: a periodizing map makes things worse."""


class SolverError(PVTSIError, RuntimeError):
    """The tau-from-t root finder failed to converge."""


class PoleEvaluationError(PVTSIError, ValueError):
    """The transformed integrand was evaluated exactly at its pole."""


class EndpointEvaluationError(PVTSIError, ValueError):
    """The transformed integrand was evaluated at (or too near) an endpoint."""


class OracleError(PVTSIError, RuntimeError):
    """The closed-form oracle could not integrate the regular part."""
