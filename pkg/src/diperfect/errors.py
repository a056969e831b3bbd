"""Typed errors shared across the library.

Every precondition violation raises a distinct class so callers (and the
CLI) can map failures to exit codes without string matching.
"""


class DiperfectError(Exception):
    """Base class for all library errors."""


class LoopArc(DiperfectError):
    pass


class VertexOutOfRange(DiperfectError):
    pass


class TooLarge(DiperfectError):
    """An exact solver was asked to exceed its size cap."""


class NotStable(DiperfectError):
    pass


class NotMaximumStable(DiperfectError):
    pass


class NotSemicomplete(DiperfectError):
    pass


class TransitiveTrianglePresent(DiperfectError):
    pass


class ExceptionDigraph(DiperfectError):
    """The unique strong semicomplete exception admits no Hamilton path
    between the requested endpoints."""


class SidesViolated(DiperfectError):
    """Non-strong semicomplete case: endpoints must lie in different
    strong components."""


class NotPerfect(DiperfectError):
    pass


class NotInClassD(DiperfectError):
    """The digraph contains an induced blocking odd cycle."""


class NotInClassB(DiperfectError):
    """The digraph contains an induced anti-directed odd cycle."""


class NotUniversal(DiperfectError):
    pass


class InsertionImpossible(DiperfectError):
    """Universal-vertex insertion failed; signals a caller bug."""


class AlphaNotAdditive(DiperfectError):
    pass


class NotAPartition(DiperfectError):
    pass


class NotACliqueCut(DiperfectError):
    pass


class NotACycle(DiperfectError):
    pass


class NotSeriesParallel(DiperfectError):
    pass


class PreconditionViolated(DiperfectError):
    pass


class NotInSemicomplete(DiperfectError):
    pass


class NotStrong(DiperfectError):
    pass


class InternalTheoremViolation(DiperfectError):
    """A construction step the underlying theorem guarantees to succeed
    failed; always an implementation bug or a precondition leak."""


class TooManyLonelyArcs(DiperfectError):
    pass


class SharedEndvertex(DiperfectError):
    pass


class UnknownClass(DiperfectError):
    pass


class ParseError(DiperfectError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class BudgetExceeded(DiperfectError):
    pass
