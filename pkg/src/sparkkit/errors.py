"""Exception hierarchy.

``FormatError`` covers unreadable input files (CLI exit code 2); everything
deriving from ``PreconditionError`` is a violated operation precondition
(CLI exit code 3).
"""


class SparkKitError(Exception):
    pass


class FormatError(SparkKitError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class PreconditionError(SparkKitError, ValueError):
    pass


class NotSymmetric(PreconditionError):
    pass


class NotPositiveDefinite(PreconditionError):
    pass


class NotFullRowRank(PreconditionError):
    pass


class DeltaOutOfRange(PreconditionError):
    pass


class AlphaOutOfRange(PreconditionError):
    pass


class ZeroMatrix(PreconditionError):
    pass


class ZeroColumn(PreconditionError):
    pass


class ZeroCoherence(PreconditionError):
    pass


class NotInteger(PreconditionError):
    pass


class SparkTooSmall(PreconditionError):
    pass


class KTooSmall(PreconditionError):
    pass


class TooLarge(PreconditionError):
    pass


class OrderOutOfRange(PreconditionError):
    pass


class Infeasible(SparkKitError):
    """No x satisfies ``A x = b``."""
