"""Exception types shared across the package.

Two families matter to callers: input problems (bad notation, violated
preconditions) and internal consistency failures, where two independent
computations of the same quantity disagree.  The CLI maps the second family
to exit code 3.
"""


class RepknotError(Exception):
    """Base class for every error raised by this package."""


class MalformedNotation(RepknotError):
    pass


class NonPlanarOrInconsistent(RepknotError):
    pass


class LetterOutOfRange(MalformedNotation):
    pass


class UnknownComponent(RepknotError):
    pass


class DisconnectedDiagram(RepknotError):
    """Raised by the Goeritz construction on a split diagram.

    ``parts`` holds the per-piece results so callers can still report them.
    """

    def __init__(self, message, parts=()):
        super().__init__(message)
        self.parts = list(parts)


class ZeroDeterminant(RepknotError):
    pass


class HypothesisViolation(RepknotError):
    pass


class NoConvergence(RepknotError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class IllConditioned(RepknotError):
    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class FillingNotKilled(RepknotError):
    pass


class InternalInconsistency(RepknotError):
    """Two independent routes to the same answer disagree."""


class OracleMismatch(InternalInconsistency):
    pass


class TestDisagreement(InternalInconsistency):
    __test__ = False  # keep pytest from collecting it
