"""Exception hierarchy shared by the library and the command line."""


class StegoError(Exception):
    """Base class for every error raised by flstego."""


class DomainError(StegoError, ValueError):
    """An argument lies outside the values an operation accepts."""


class DimensionError(StegoError, ValueError):
    """Image shapes do not agree with each other or with the map modulus."""


class KeyRangeError(StegoError, ValueError):
    """A receiver key is outside [1, P-1] for the map in use."""


class PeriodError(StegoError, RuntimeError):
    """The period search hit its iteration cap (never happens for a valid map)."""


class NetpbmError(StegoError, ValueError):
    """A Netpbm file could not be parsed."""


class HeaderError(NetpbmError):
    pass


class MaxvalError(NetpbmError):
    pass


class TruncatedDataError(NetpbmError):
    pass


class NonSquareError(DimensionError):
    """A raster loaded for pipeline use is not square."""


class ImageFileError(StegoError, OSError):
    """Reading or writing an image file failed at the OS level."""
