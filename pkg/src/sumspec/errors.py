"""Exception types shared across the package."""


class SumSpecError(Exception):
    """Base class for every error raised by this package."""


class IrrationalValue(SumSpecError):
    pass


class ScanBudgetExceeded(SumSpecError):
    pass


class BlockNotSupported(SumSpecError):
    pass


class HypothesisViolation(SumSpecError):
    pass


class OracleMismatch(SumSpecError):
    """Two independent decision routes disagreed; always an internal bug."""


class ExhaustedWitness(SumSpecError):
    pass


class InfiniteCore(SumSpecError):
    pass


class ConvergenceFailure(SumSpecError):
    pass


class AmbiguousBoundary(SumSpecError):
    pass


class NotAProjection(SumSpecError):
    def __init__(self, index, residual):
        super().__init__(f"input {index} is not an orthogonal projection (residual {residual:.3e})")
        self.index = index
        self.residual = residual


class ParseError(SumSpecError):
    def __init__(self, message, line=0, column=0, expected=()):
        where = f"line {line}, column {column}: " if line else ""
        hint = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{where}{message}{hint}")
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))


class DuplicateLabel(ParseError):
    pass


class UnknownLabel(ParseError):
    pass


class UnknownDirective(ParseError):
    pass
