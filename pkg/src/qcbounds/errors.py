"""Exception types shared across the package.

Everything derives from ValueError so that sloppy call sites which only
catch the builtin still behave sensibly.
"""


class NotFundamental(ValueError):
    """-D is not a fundamental discriminant of an imaginary quadratic field."""


class NotInvertible(ValueError):
    """Requested a modular inverse of a non-unit."""


class InvalidHint(ValueError):
    """The prime hint passed to a refined Weil bound does not apply."""


class LevelMismatch(ValueError):
    """Series modulus incompatible with the level (N must divide c, or gcd(d, N) = 1)."""


class UnsupportedCase(ValueError):
    """(m, N) outside the supported trace-formula cases (1, p**2), (1, p), (p, p)."""


class NotPrime(ValueError):
    """An argument that must be prime is not."""


class DividesDiscriminant(ValueError):
    """The level prime divides the character conductor."""


class DomainError(ValueError):
    """Numeric argument outside the domain of the function."""


class NonConvergence(RuntimeError):
    """Iteration failed to converge (degenerate input)."""


class UnsupportedPrime(ValueError):
    """Component-group machinery needs p = 11 or p > 13."""


class UnsupportedRamification(ValueError):
    """The tabulated reduction values only cover ramification index e in {1, 2}."""
