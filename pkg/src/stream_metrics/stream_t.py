"""STREAM-T: the temporal-flow score.

Per feature dimension, the skewness values of the real and the fake set
are histogrammed over a shared range and the two count vectors are
compared by Pearson correlation; the score is the mean correlation over
dimensions.  Identical datasets score exactly 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, ShapeMismatchError, ValidationError
from .feature_io import FeatureDataset
from .powerlaw import SKEWNESS_MODES, skewness_table

DEFAULT_BINS = 50


@dataclass(frozen=True)
class StreamTConfig:
    bins: int = DEFAULT_BINS
    skewness_mode: str = "paper"
    include_zero_frequency: bool = False

    def __post_init__(self) -> None:
        if self.bins < 2:
            raise ValidationError(f"bin count must be >= 2, got {self.bins}")
        if self.skewness_mode not in SKEWNESS_MODES:
            raise ValidationError(f"unknown skewness mode {self.skewness_mode!r}")


@dataclass
class HistogramPair:
    """Real/fake counts over shared equal-width bins for one dimension.

    Bins are closed on the right, the first bin also on the left, so every
    value in [edges[0], edges[-1]] is counted.  A degenerate range (all
    values identical) puts all mass of both sets in bin 0.
    """

    bin_count: int
    edges: np.ndarray
    real_counts: np.ndarray
    fake_counts: np.ndarray


@dataclass
class StreamTScore:
    score: float
    per_dimension_rho: np.ndarray
    config: StreamTConfig = field(default_factory=StreamTConfig)


def build_histograms(
    real_col: np.ndarray, fake_col: np.ndarray, bins: int = DEFAULT_BINS
) -> HistogramPair:
    """Histogram both columns over the shared range of their union."""
    real_col = np.asarray(real_col, dtype=np.float64)
    fake_col = np.asarray(fake_col, dtype=np.float64)
    if bins < 2:
        raise ValidationError(f"bin count must be >= 2, got {bins}")
    if not (np.isfinite(real_col).all() and np.isfinite(fake_col).all()):
        raise ValidationError("histogram inputs must be finite")

    lo = min(real_col.min(), fake_col.min())
    hi = max(real_col.max(), fake_col.max())
    if lo == hi:
        edges = np.full(bins + 1, lo, dtype=np.float64)
        real_counts = np.zeros(bins, dtype=np.int64)
        fake_counts = np.zeros(bins, dtype=np.int64)
        real_counts[0] = real_col.size
        fake_counts[0] = fake_col.size
        return HistogramPair(bins, edges, real_counts, fake_counts)

    edges = np.linspace(lo, hi, bins + 1)

    def count(col: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(edges, col, side="left") - 1
        np.clip(idx, 0, bins - 1, out=idx)
        return np.bincount(idx, minlength=bins).astype(np.int64)

    return HistogramPair(bins, edges, count(real_col), count(fake_col))


def histogram_correlation(pair: HistogramPair) -> float:
    """Pearson correlation of the two count vectors.

    Equal vectors score 1.0 exactly; otherwise a zero-variance vector on
    either side scores 0.0.
    """
    a = pair.real_counts
    b = pair.fake_counts
    if np.array_equal(a, b):
        return 1.0
    a = a.astype(np.float64)
    b = b.astype(np.float64)
    ac = a - a.mean()
    bc = b - b.mean()
    var_a = float(np.sum(ac * ac))
    var_b = float(np.sum(bc * bc))
    if var_a == 0.0 or var_b == 0.0:
        return 0.0
    rho = float(np.sum(ac * bc)) / np.sqrt(var_a * var_b)
    return float(np.clip(rho, -1.0, 1.0))


def stream_t(
    real: FeatureDataset, fake: FeatureDataset, config: StreamTConfig | None = None
) -> StreamTScore:
    """Temporal-flow score between a validated real/fake pair."""
    cfg = config or StreamTConfig()
    if (real.n_frames, real.n_dims) != (fake.n_frames, fake.n_dims):
        raise ShapeMismatchError(
            f"pair disagrees: real (T={real.n_frames}, d={real.n_dims}) vs "
            f"fake (T={fake.n_frames}, d={fake.n_dims})"
        )
    if real.n_videos < 2 or fake.n_videos < 2:
        raise InsufficientDataError("need at least 2 videos per set")

    gamma_real = skewness_table(
        real, mode=cfg.skewness_mode, include_zero_frequency=cfg.include_zero_frequency
    ).values
    gamma_fake = skewness_table(
        fake, mode=cfg.skewness_mode, include_zero_frequency=cfg.include_zero_frequency
    ).values

    d = gamma_real.shape[1]
    rho = np.empty(d, dtype=np.float64)
    for k in range(d):
        pair = build_histograms(gamma_real[:, k], gamma_fake[:, k], cfg.bins)
        rho[k] = histogram_correlation(pair)
    return StreamTScore(score=float(rho.mean()), per_dimension_rho=rho, config=cfg)
