"""Exception hierarchy.

Each class carries the CLI exit code it maps to, so the front end never has
to guess how to report a failure.
"""


class LorenzError(Exception):
    exit_code = 3


class WordParseError(LorenzError, ValueError):
    exit_code = 2


class InadmissibleError(LorenzError):
    """Raised when a pair fails the admissibility test.

    ``violation`` holds the first failing condition (a :class:`Violation`).
    """

    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


class DegeneratePairError(LorenzError):
    """Closed forms only cover pairs where no shift of X equals Y."""


class InvalidOrbitSetError(LorenzError):
    pass


class NotAKnotError(LorenzError):
    pass


class ResourceCapError(LorenzError):
    exit_code = 5


class SamplingError(LorenzError):
    exit_code = 5


class ConsistencyError(LorenzError, AssertionError):
    """An internal invariant was violated; this indicates a bug."""

    exit_code = 4
