"""Error and warning types shared across the package."""


class InputDomainError(ValueError):
    """A numeric input is outside the domain a function can accept (NaN, inf,
    or a value the contract excludes)."""


class UsageError(ValueError):
    """An API or CLI invocation is malformed: wrong arity, bad configuration,
    unknown keys, or a violated precondition."""


class DegenerateFiringWarning(UserWarning):
    """No rule fired with positive weight; the defuzzifier fell back to the
    universe midpoint. Cannot happen with a total rule base over a partition
    of unity, but the fallback is defined rather than left as a crash."""
