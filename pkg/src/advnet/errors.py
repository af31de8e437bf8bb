"""Exception types shared across the package."""


class AdvnetError(Exception):
    """Base class for all errors raised by this package."""


class NotPrimePower(AdvnetError):
    pass


class TooLarge(AdvnetError):
    pass


class AlphabetMismatch(AdvnetError):
    pass


class EmptyCode(AdvnetError):
    pass


class EmptyFamily(AdvnetError):
    pass


class SearchLimitExceeded(AdvnetError):
    pass


class InvalidParams(AdvnetError):
    pass


class SingletonCode(AdvnetError):
    pass


class FieldTooSmall(AdvnetError):
    pass


class NoCodewordInRange(AdvnetError):
    pass


class AmbiguousDecode(AdvnetError):
    pass


class UnsupportedVariant(AdvnetError):
    pass


class IndexOutOfRange(AdvnetError):
    pass


class CyclicGraph(AdvnetError):
    pass


class NotACut(AdvnetError):
    pass


class BadFreeze(AdvnetError):
    pass


class MissingCodeFunction(AdvnetError):
    pass


class Infeasible(AdvnetError):
    """A path/flow demand cannot be met; carries the violated cut."""

    def __init__(self, sources, terminal, message=None):
        self.sources = sources
        self.terminal = terminal
        super().__init__(message or f"demand violated for sources {sorted(sources)} at {terminal}")


class RegionViolated(AdvnetError):
    """A requested rate vector lies outside the applicable rate region."""

    def __init__(self, subset, message=None):
        self.subset = subset
        super().__init__(message or f"rate bound violated for source subset {sorted(subset)}")


class DrawsExhausted(AdvnetError):
    def __init__(self, terminal, message=None):
        self.terminal = terminal
        super().__init__(message or f"no successful draw; last failing terminal: {terminal}")


class DecodeFailure(AdvnetError):
    pass


class UnsupportedSources(AdvnetError):
    pass


class ParseError(AdvnetError):
    pass
