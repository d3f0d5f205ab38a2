"""Exception and warning types shared across the package."""


class SchmidtStrataError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(SchmidtStrataError, ValueError):
    pass


class ZeroState(SchmidtStrataError, ValueError):
    pass


class ZeroMatrix(SchmidtStrataError, ValueError):
    pass


class InvalidRank(SchmidtStrataError, ValueError):
    pass


class NotIndependent(SchmidtStrataError, ValueError):
    pass


class NotSameState(SchmidtStrataError, ValueError):
    pass


class UnequalLength(SchmidtStrataError, ValueError):
    pass


class OnHypersurface(SchmidtStrataError, ValueError):
    """The core matrix lies on the determinant hypersurface det B = 0."""


class ChartError(SchmidtStrataError, ValueError):
    """A requested chart does not contain the point."""


class FrameNotOrthonormal(SchmidtStrataError, ValueError):
    pass


class IllConditioned(SchmidtStrataError, ArithmeticError):
    """Singular-value gap too small to read off a Jacobian rank."""


class DegenerateCoefficients(UserWarning):
    """Repeated Schmidt coefficients; the orbit dimension formula does not apply."""
