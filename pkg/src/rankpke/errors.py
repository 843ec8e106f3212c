"""Exception hierarchy shared across the package."""


class RankPKEError(Exception):
    """Base class for every error raised by rankpke."""


class FieldMismatch(RankPKEError, ValueError):
    pass


class DivisionByZero(RankPKEError, ZeroDivisionError):
    pass


class NoSolution(RankPKEError):
    """Raised when a linear system x·A = b is inconsistent."""


class DecodingFailure(RankPKEError):
    """No codeword lies within the unique-decoding radius."""


class SamplingFailure(RankPKEError):
    """A rejection sampler exhausted its retry budget."""


class ParamError(RankPKEError, ValueError):
    pass


class Unsupported(RankPKEError):
    pass


class FormatError(RankPKEError):
    pass


class CorruptionError(FormatError):
    """Checksum mismatch on a serialized object."""
