"""Exception hierarchy shared by every module."""


class ScottBenchError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InputError(ScottBenchError, ValueError):
    pass


class FamilyMismatch(InputError):
    """An element was passed to a group of a different family or shape."""


class UnsupportedError(ScottBenchError):
    pass


class ClassificationViolation(ScottBenchError):
    """A sampled junction item exceeds the complexity class its builder declared."""


class UnknownBuilder(InputError):
    pass


class ParseError(InputError):
    pass


class UnboundVariable(InputError):
    pass


class SearchFailure(ScottBenchError):
    """A bounded search (e.g. for a residual map) ran out of candidates."""


class MonotonicityViolation(AssertionError):
    """Verdicts flipped between Confirmed and Refuted as bounds grew."""
