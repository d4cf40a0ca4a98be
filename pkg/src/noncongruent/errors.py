"""Exception types shared across the package."""


class NoncongruentError(Exception):
    """Base class for all package-specific errors."""


class ZeroOrNegative(NoncongruentError):
    """Input must be a positive integer."""


class NotSquareFree(NoncongruentError):
    """Input has a repeated prime factor."""


class NotCoprime(NoncongruentError):
    """Arguments share a common factor where coprimality is required."""


class NoRoot(NoncongruentError):
    """No square root exists at the requested modulus."""


class IllDefined(NoncongruentError):
    """Quadratic-field residue symbol is not well defined for these arguments."""


class DimensionMismatch(NoncongruentError):
    """Vector length does not match the matrix shape."""


class EmptyFactorization(NoncongruentError):
    """Operation needs at least one odd prime factor (n = 1, 2 rejected)."""


class NoRepresentation(NoncongruentError):
    """The requested norm-form representation does not exist."""


class OutOfRange(NoncongruentError):
    """Argument lies outside the supported range."""


class CountNotPowerOfTwo(NoncongruentError):
    """Internal consistency failure: |V1| + |V2| should be a power of two."""


class NotRankTwo(NoncongruentError):
    """Operation requires pure 2-Selmer rank exactly 2."""


class VerificationFailed(NoncongruentError):
    """A posteriori check of a computed quantity failed (internal bug signal)."""


class PreconditionFailed(NoncongruentError):
    """Documented precondition of the operation does not hold."""


class PrecisionExhausted(NoncongruentError):
    """Symbol or point evaluation stayed ambiguous after all precision retries."""


class NotFundamental(NoncongruentError):
    """Discriminant is not a fundamental field discriminant."""


class TooLarge(NoncongruentError):
    """Input exceeds the supported desk-scale bound."""
