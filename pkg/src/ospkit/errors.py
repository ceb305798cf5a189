"""Exception types shared across the package."""


class OspkitError(Exception):
    """Base class for all errors raised by ospkit."""


class DegreeBoundMismatch(OspkitError):
    """Grassmann operands carry different degree bounds; promote first."""


class NotInvertible(OspkitError):
    """Grassmann element has zero scalar part, hence no inverse."""


class ShapeMismatch(OspkitError):
    """Matrix/vector dimensions, parities or coefficient rings disagree."""


class InhomogeneousInput(OspkitError):
    """Operation requires an even or odd input, not a mixed-parity one."""


class NotNilpotent(OspkitError):
    """Exponential series requires a nilpotent argument."""


class SingularCayley(OspkitError):
    """1 - X is not invertible, so the Cayley transform is undefined."""


class NotNormalized(OspkitError):
    """Gram-Schmidt seed does not satisfy the required normalization."""


class IrrationalCompletion(OspkitError):
    """No rational orthosymplectic completion of the degree-zero seed."""


class NotOrthosymplectic(OspkitError):
    """Gram matrix of the candidate basis differs from the standard form."""


class DeltaMismatch(OspkitError):
    """Brauer loop parameter disagrees with m - 2n of the target space."""


class TooLarge(OspkitError):
    """Requested solve exceeds the configured size bound."""


class NotEvenPoint(OspkitError):
    """Evaluation point coordinates do not match the column parities."""


class NoPfaffianFound(OspkitError):
    """Invariant slice contained no vector with the required leading term."""
