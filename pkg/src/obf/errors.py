"""Exception hierarchy shared by every module of the engine."""


class OBFError(Exception):
    """Base class for all engine errors."""


class InvalidPage(OBFError):
    pass


class UnknownComponent(OBFError):
    pass


class MissingAttributes(OBFError):
    pass


class UnsupportedFDTC(OBFError):
    """The monodromy is not a product of boundary-parallel twists and no override was given."""


class UnsupportedAction(OBFError):
    pass


class InvalidSlice(OBFError):
    pass


class EmptyDecomposition(OBFError):
    """The complex has no hyperbolic point; the surface is a product."""


class WrongSurfaceKind(OBFError):
    pass


class InconsistentLedger(OBFError):
    pass


class NotApplicable(OBFError):
    """A move or formula was requested at a site that fails its predicate."""

    def __init__(self, message, clause=None):
        super().__init__(message)
        self.clause = clause


class ObstructedByIntersection(NotApplicable):
    pass


class Unsupported(OBFError):
    pass


class InvalidComplex(OBFError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class ParseError(OBFError):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class UnknownLeaf(ParseError):
    def __init__(self, leaf, line=0, column=0):
        super().__init__(f"UnknownLeaf({leaf!r})", line, column)
        self.leaf = leaf


class IllegalSurgery(OBFError):
    pass


class NotClosed(OBFError):
    pass


class MalformedMovie(OBFError):
    pass


class Lemma43Violation(OBFError):
    """A null-homotopic c-circle in a complex claimed to satisfy the planar and C-top hypotheses."""


class Lemma42Violation(OBFError):
    """An all-b-arc elliptic point whose surrounding hyperbolic points share one sign."""


class FDTCContradiction(OBFError):
    pass


class NoProgress(OBFError):
    """Normalization found no reducing move although the complex is not terminal."""


class IncompleteInput(OBFError):
    pass


class NotFoundWithinBounds(OBFError):
    pass


class InvalidParameter(OBFError):
    pass


class UnknownFixture(OBFError):
    pass


class FixtureMismatch(OBFError):
    """A registered fixture no longer reproduces its expected values."""
