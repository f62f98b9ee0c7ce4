"""Exception types raised by the solver and its front end."""


class MMSWEError(Exception):
    """Base class for all solver errors."""


class InvalidConfigError(MMSWEError):
    """Bad run configuration (unknown case, bad resolution, conflicting keys)."""


class InvalidArgumentError(MMSWEError):
    """Mismatched arguments to a library call (wrong mesh, wrong shapes)."""


class OutOfRangeError(MMSWEError):
    """A query outside the valid range (e.g. time outside a motion step)."""


class MeshSingularError(MMSWEError):
    """A mesh element is degenerate or inverted."""


class PhysicsDomainError(MMSWEError):
    """Non-physical pointwise state (negative depth, non-finite values)."""


class AdaptationInputError(MMSWEError):
    """Non-finite or unusable input to the mesh-adaptation pipeline."""


class PositivityViolationError(MMSWEError):
    """A cell average of the water depth became negative."""

    def __init__(self, message, element=None, time=None):
        super().__init__(message)
        self.element = element
        self.time = time


class NumericalBlowupError(MMSWEError):
    """Non-finite values appeared during assembly or time stepping."""


class NonConvergenceError(MMSWEError):
    """The step loop hit its maximum step count before the final time."""
