"""Exception hierarchy shared by all modules."""


class OrbitSpaceError(Exception):
    """Base class for every error raised by orbitspace."""


class NotHyperbolic(OrbitSpaceError, ValueError):
    pass


class DepthTooLarge(OrbitSpaceError, ValueError):
    pass


class DegeneratePair(OrbitSpaceError, ArithmeticError):
    """An acted-on orbit point collapsed onto the strip boundary."""


class DegeneratePoints(OrbitSpaceError, ArithmeticError):
    """Two circle points that must be distinct are within tolerance."""


class AmbiguousGeometry(OrbitSpaceError, ArithmeticError):
    """A membership or classification test fell within tolerance of a boundary."""


class MixedSignProfile(OrbitSpaceError):
    pass


class InconsistentVerdicts(OrbitSpaceError):
    """Independent simplicity criteria disagree."""


class UnknownGenerator(OrbitSpaceError, ValueError):
    pass


class ParseError(OrbitSpaceError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)
        self.line = line
        self.column = column


class ValidationError(OrbitSpaceError, ValueError):
    pass
