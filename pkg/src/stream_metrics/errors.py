"""Exception types shared across the engine.

The CLI maps these onto process exit codes; library callers catch them
directly.
"""


class StreamMetricsError(Exception):
    """Base class for all engine errors."""


class FormatError(StreamMetricsError):
    """Array file header is malformed or not a supported layout."""


class UnsupportedDtypeError(FormatError):
    """Array file declares a dtype outside {float32, float64, uint8}."""


class CorruptionError(StreamMetricsError):
    """Array file payload does not match the byte count the header declares."""


class ValidationError(StreamMetricsError):
    """Data or parameter violates a documented invariant (non-finite values,
    empty axes, out-of-range intensities, too few frames)."""


class ShapeMismatchError(StreamMetricsError):
    """Two inputs that must agree in shape do not (T/d of a dataset pair,
    query dimension vs support dimension, window longer than T)."""


class InsufficientDataError(StreamMetricsError):
    """Not enough samples for the requested operation (fewer than k+1 points,
    fewer than 2 frequencies, fewer than 2 videos)."""


class NumericError(StreamMetricsError):
    """A numerical computation produced an unusable result (non-finite
    inputs, distance negative beyond tolerance)."""


class SmallSampleWarning(UserWarning):
    """Dataset pair is below the size where scores are stable."""
