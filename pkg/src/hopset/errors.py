"""Exception types raised across the hopset package."""


class HopsetError(Exception):
    """Base class for all hopset errors."""


class InvalidPolynomialError(HopsetError):
    """Polynomial is malformed (degree 0, bad coefficients) or not primitive."""


class DegenerateSeedError(HopsetError):
    """LFSR seed is all zero and would generate the constant zero sequence."""


class UnsupportedDegreeError(HopsetError):
    """No built-in primitive polynomial for the requested (p, l)."""


class EmptySequenceError(HopsetError):
    """Tuple width is too large for the source sequence (no full word fits)."""


class FamilySizeError(HopsetError):
    """Family size q falls outside 1 <= q <= M."""

    def __init__(self, q, M=None):
        if M is None:
            super().__init__(f"family size q={q} must be at least 1")
        else:
            super().__init__(f"family size q={q} violates 1 <= q <= M={M}")
        self.q = q
        self.M = M


class IncompatibleSequenceError(HopsetError):
    """Two hop sequences cannot be correlated (length or plan mismatch)."""


class IncompatibleSetError(HopsetError):
    """Two sequence sets do not share the same shape (q, length, plan)."""


class UnsupportedDelayError(HopsetError):
    """A relative user delay of one hop or more was requested."""


class SingularFitError(HopsetError):
    """Least-squares fit is degenerate (all x values equal)."""


class SequenceFormatError(HopsetError):
    """A sequence file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class ConfigError(HopsetError):
    """Run configuration is inconsistent or incomplete."""
