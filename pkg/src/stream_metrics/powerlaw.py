"""Power-law fits of amplitude spectra and their skewness.

Natural video signals concentrate spectral power at low frequencies, so
each dimension's positive-frequency amplitudes are modeled as
``a(z) = C * z**-alpha`` over the integer bin grid z = 1..F.  The fit is
ordinary least squares in log-log space.  Normalizing the fitted curve to
sum to one over the grid gives a discrete distribution
``p(z) = (C / K) * z**-alpha`` whose skewness is the per-dimension
temporal fingerprint.

Two skewness definitions are provided:

* ``paper`` (default): the closed form
  ``sqrt(K) * sum(z**(3-alpha)) / sqrt(C * sum(z**(2-alpha)))``.
* ``direct``: the third standardized moment ``m3 / sigma**3`` of p(z),
  computed from explicit moment sums.

They do not agree numerically; each is its own self-consistent score and
the chosen mode is echoed in every report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._threads import run_chunks
from .errors import InsufficientDataError, NumericError, ValidationError
from .feature_io import FeatureDataset
from .spectral import batch_amplitude_spectra

# Amplitudes are clamped to this floor before the log so exactly-zero
# spectra (stop scenes) fit as a flat line instead of failing.
AMPLITUDE_FLOOR = 1e-8

SKEWNESS_MODES = ("paper", "direct")

# Cells per chunk when sweeping a whole table; keeps the (chunk, d, F)
# intermediates comfortably in cache/memory.
_CHUNK_CELLS = 1 << 22


@dataclass
class PowerLawFit:
    """Fitted ``C * z**-alpha`` with the log-domain sum of squared residuals."""

    alpha: float
    c: float
    residual: float


@dataclass
class SkewnessTable:
    """Per-video, per-dimension skewness values, shape (N, d)."""

    values: np.ndarray
    mode: str


def _fit_batch(amps: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized log-log OLS over the last axis (the F frequency bins)."""
    f = amps.shape[-1]
    x = np.log(np.arange(1, f + 1, dtype=np.float64))
    xc = x - x.mean()
    denom = float(np.sum(xc * xc))
    y = np.log(np.maximum(amps, AMPLITUDE_FLOOR))
    ym = y.mean(axis=-1, keepdims=True)
    slope = np.sum((y - ym) * xc, axis=-1) / denom
    intercept = y.mean(axis=-1) - slope * x.mean()
    pred = intercept[..., None] + slope[..., None] * x
    residual = np.sum((y - pred) ** 2, axis=-1)
    return -slope, np.exp(intercept), residual


def fit_power_law(amps: np.ndarray) -> PowerLawFit:
    """Fit positive-frequency amplitudes (values at z = 1..F, F >= 2)."""
    arr = np.asarray(amps, dtype=np.float64)
    if arr.ndim != 1:
        raise ValidationError(f"amplitude vector must be 1-D, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise InsufficientDataError(
            f"need at least 2 frequencies to fit, got {arr.shape[0]}"
        )
    if not np.isfinite(arr).all() or (arr < 0).any():
        raise ValidationError("amplitudes must be finite and non-negative")
    alpha, c, residual = _fit_batch(arr[None, :])
    return PowerLawFit(alpha=float(alpha[0]), c=float(c[0]), residual=float(residual[0]))


def _grid_sums(alpha: np.ndarray, f: int, power: float) -> np.ndarray:
    """sum over z = 1..F of z**(power - alpha), vectorized over alpha."""
    log_z = np.log(np.arange(1, f + 1, dtype=np.float64))
    return np.exp((power - alpha)[..., None] * log_z).sum(axis=-1)


def normalization_constant(fit: PowerLawFit, f: int) -> float:
    """K such that (C / K) * z**-alpha sums to 1 over z = 1..F."""
    alpha = np.asarray(fit.alpha, dtype=np.float64)
    return float(fit.c * _grid_sums(alpha, f, 0.0))


def _skewness_paper_batch(alpha: np.ndarray, c: np.ndarray, f: int) -> np.ndarray:
    k = c * _grid_sums(alpha, f, 0.0)
    s3 = _grid_sums(alpha, f, 3.0)
    s2 = _grid_sums(alpha, f, 2.0)
    return np.sqrt(k) * s3 / np.sqrt(c * s2)


def _skewness_direct_batch(alpha: np.ndarray, f: int) -> np.ndarray:
    z = np.arange(1, f + 1, dtype=np.float64)
    w = np.exp(-alpha[..., None] * np.log(z))
    w = w / w.sum(axis=-1, keepdims=True)
    mu = (w * z).sum(axis=-1)
    centered = z - mu[..., None]
    var = (w * centered**2).sum(axis=-1)
    m3 = (w * centered**3).sum(axis=-1)
    return m3 / var**1.5


def skewness_paper(fit: PowerLawFit, f: int) -> float:
    """Closed-form skewness of the fitted distribution (see module docs)."""
    if f < 2:
        raise InsufficientDataError(f"need F >= 2 frequencies, got {f}")
    alpha = np.asarray([fit.alpha], dtype=np.float64)
    c = np.asarray([fit.c], dtype=np.float64)
    return float(_skewness_paper_batch(alpha, c, f)[0])


def skewness_direct(fit: PowerLawFit, f: int) -> float:
    """Third standardized moment m3 / sigma**3 of p(z); independent of C."""
    if f < 2:
        raise InsufficientDataError(f"need F >= 2 frequencies, got {f}")
    alpha = np.asarray([fit.alpha], dtype=np.float64)
    return float(_skewness_direct_batch(alpha, f)[0])


def skewness_table(
    ds: FeatureDataset,
    mode: str = "paper",
    include_zero_frequency: bool = False,
) -> SkewnessTable:
    """Skewness of the fitted spectral distribution per (video, dimension).

    The zero-frequency (mean-amplitude) bin is dropped before fitting by
    default; ``include_zero_frequency=True`` keeps it for ablations, in
    which case it occupies the first slot of a 1-based grid.
    """
    if mode not in SKEWNESS_MODES:
        raise ValidationError(f"unknown skewness mode {mode!r}")
    amps = batch_amplitude_spectra(ds)  # (N, d, F+1)
    if not include_zero_frequency:
        amps = amps[:, :, 1:]
    n, d, f = amps.shape
    if f < 2:
        raise InsufficientDataError(
            f"spectrum has {f} usable frequencies, need at least 2"
        )

    values = np.empty((n, d), dtype=np.float64)
    chunk = max(1, _CHUNK_CELLS // max(1, d * f))

    def work(rows: slice) -> None:
        alpha, c, _ = _fit_batch(amps[rows])
        if mode == "paper":
            values[rows] = _skewness_paper_batch(alpha, c, f)
        else:
            values[rows] = _skewness_direct_batch(alpha, f)

    run_chunks(work, [slice(s, min(s + chunk, n)) for s in range(0, n, chunk)])
    if not np.isfinite(values).all():
        raise NumericError("skewness table contains non-finite entries")
    return SkewnessTable(values=values, mode=mode)
