"""Exception types shared across the solver."""


class Bouss1dError(Exception):
    """Base class for all solver errors."""


class NonpositiveDepth(Bouss1dError):
    """A depth field has a node with d <= 0."""


class SingularMatrix(Bouss1dError):
    """Pivoting broke down in a linear solve."""


class ComplexRoots(Bouss1dError):
    """The model dispersion relation has no real root at this wavenumber."""


class AlphaNotZero(Bouss1dError):
    """The semi-implicit stepper only supports coefficient sets with alpha_t = 0."""


class NegativeParameter(Bouss1dError):
    """A dispersive parameter violates its sign constraint."""


class GeometryError(Bouss1dError):
    """Initial data placed incompatibly with the bathymetry."""


class ConfigError(Bouss1dError):
    """Run configuration failed validation."""


class BlowUp(Bouss1dError):
    """A time integration produced NaN or nonpositive depth."""

    def __init__(self, step: int, t: float, reason: str):
        self.step = step
        self.t = t
        self.reason = reason
        super().__init__(f"blow-up at step {step}, t={t:.6g}: {reason}")
