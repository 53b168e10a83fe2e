"""Exception hierarchy shared by every layer of the package."""


class HomSuspError(Exception):
    """Base class for all package errors."""


class ContextError(HomSuspError):
    """Variables or contexts do not line up."""


class ShapeError(HomSuspError):
    """Input has the wrong shape (e.g. multivariate where univariate expected)."""


class DegreeError(HomSuspError):
    """Input has an unsupported degree (e.g. a constant where a nonconstant is needed)."""


class InvalidTransformationError(HomSuspError):
    pass


class ResourceError(HomSuspError):
    """A configured safety limit was exceeded."""


class CancelledError(ResourceError):
    """A caller-supplied stop signal interrupted a computation."""


class InvalidSuspensionError(HomSuspError):
    """The suspension function is constant on the base variety."""


class ProtocolError(HomSuspError):
    """A tower level was evaluated before its prerequisites passed."""


class MethodError(HomSuspError):
    """The requested decision method does not apply to this input."""


class PrimeRejectedError(HomSuspError):
    """The prime divides a coefficient denominator."""


class WitnessInvalidError(HomSuspError):
    """The supplied variable witness does not complete a coordinate system."""


class DistinctnessError(HomSuspError):
    """Two factors are proportional."""


class UnsupportedCaseError(HomSuspError):
    """No formula is available for this input."""


class InconsistencyError(HomSuspError):
    """Two independent routes disagree. Always a bug."""


class ParseError(HomSuspError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DomainError(HomSuspError):
    """A point does not lie on the scheme."""
