"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid parameters or configuration."""


class DegenerateModeError(ArithmeticError):
    """A momentum mode is exactly gapless; the Bogoliubov angle is undefined."""


class NonPhysicalSpectrumError(ArithmeticError):
    """A correlation-matrix spectrum lies outside [0, 1] beyond tolerance."""


class SingularMatrixError(ArithmeticError):
    """A matrix inversion inside the negativity bound is ill conditioned."""


class NonRealResultError(ArithmeticError):
    """A quantity that must be real came out with a large imaginary part."""


class OracleMismatchError(AssertionError):
    """A brute-force oracle check disagreed with the fast code path."""
