"""Exception hierarchy shared by every module of the package."""


class SRError(ValueError):
    """Base class for all validation errors raised by :mod:`srdops`."""


class EmptyComplex(SRError):
    pass


class GhostVertex(SRError):
    pass


class BadIndex(SRError):
    pass


class NotAFace(SRError):
    pass


class SupportNotAFace(SRError):
    pass


class AmbientMismatch(SRError):
    pass


class FieldMismatch(SRError):
    pass


class NotInDR(SRError):
    pass


class ZeroElement(SRError):
    pass


class TooLarge(SRError):
    pass


class BadQ(SRError):
    pass


class QTooSmall(SRError):
    pass


class ParseError(SRError):
    pass


class OracleDisagreement(RuntimeError):
    """Two independent computations of the same quantity disagree.

    Signals a library bug; never raised for bad user input.
    """
