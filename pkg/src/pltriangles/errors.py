"""Exception hierarchy shared by the package."""


class ArrangementError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(ArrangementError, ValueError):
    pass


class InvalidColumn(ArrangementError, ValueError):
    """A column has adjacent, repeated, unordered or out-of-range rows."""


class InvalidCrossing(ArrangementError, ValueError):
    """A cross would make two wires meet a second time."""


class DiagramParseError(ArrangementError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OutOfDomain(ArrangementError, ValueError):
    pass


class NoData(ArrangementError, LookupError):
    pass


class InvalidArrangement(ArrangementError, ValueError):
    """Parallel or coincident lines, or otherwise not a simple affine arrangement."""


class PreconditionFailed(ArrangementError, ValueError):
    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


class ConstructionFailed(ArrangementError, RuntimeError):
    pass


class PrecisionInsufficient(ArrangementError, ArithmeticError):
    """Interval enclosures still overlap where a strict order is needed."""
