"""Exception types raised by the transform and I/O layers."""


class QuaternionDomainError(ValueError):
    """Operation undefined for the given input (zero inverse, empty signal, zero window)."""


class GeometryMismatchError(ValueError):
    """Two signals were combined on incompatible sampling grids."""


class BranchError(ValueError):
    """A b != 0 formula was called with b == 0, or the reverse."""


class FastPathError(ValueError):
    """The FFT-factored path cannot serve this request (axes or grid not supported)."""


class OracleSizeError(ValueError):
    """Brute-force evaluator refused an input above its cost guard."""


class FormatError(ValueError):
    """Malformed QGRID, config, or image file."""
