"""Exception types shared across the package."""


class NdsError(Exception):
    """Base class for all package errors."""


class DomainError(NdsError):
    """Argument outside the mathematical domain of an operation."""


class NotInSemigroup(NdsError):
    """Element has no factorization over the generators."""


class SolverError(NdsError):
    """A root solve or internal consistency check failed to converge."""


class ConditionFailed(NdsError):
    """Certificate precondition |a1*a2*P(t)| > a1 does not hold."""


class WitnessInvalid(NdsError):
    """Claimed rational r0 witness does not round-trip through the solver."""


class EmptyInterval(NdsError):
    """Candidate interval (a1, |a1*a2*P|) is empty or degenerate."""


class ChecksumMismatch(NdsError):
    """Checkpoint file is corrupt or belongs to a different scan config."""
