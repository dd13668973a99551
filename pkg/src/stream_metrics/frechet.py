"""Feature-space Frechet distance baseline.

Fits a Gaussian to each point cloud and evaluates
``|mu_a - mu_b|^2 + Tr(S_a + S_b - 2 (S_a S_b)^(1/2))``.

This is the classic Frechet formula applied to the engine's per-video
mean-amplitude features, NOT to any pretrained video-network embedding,
so its absolute values are not comparable to published video-metric
scores.  It is shipped as a comparison instrument for the experiment
harness.  A sliding-window variant averages the distance over fixed-size
temporal windows for long videos.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, NumericError, ShapeMismatchError
from .feature_io import FeatureDataset

# Eigenvalues above this (negative) floor are treated as numerical zeros.
_EIG_FLOOR = -1e-8
# A distance this far below zero is clamped; anything worse is an error.
_DISTANCE_FLOOR = -1e-6

DEFAULT_WINDOW = 16
DEFAULT_STRIDE = 16


@dataclass
class GaussianFit:
    mean: np.ndarray
    covariance: np.ndarray


def fit_gaussian(points: np.ndarray) -> GaussianFit:
    """Sample mean and unbiased (N-1) covariance of an (N, d) cloud."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise NumericError(f"point cloud must be (N, d), got shape {pts.shape}")
    n = pts.shape[0]
    if n < 2:
        raise InsufficientDataError(f"need at least 2 points, got {n}")
    if not np.isfinite(pts).all():
        raise NumericError("point cloud contains NaN or Inf")
    mean = pts.mean(axis=0)
    centered = pts - mean
    cov = centered.T @ centered / (n - 1)
    cov = (cov + cov.T) / 2.0
    return GaussianFit(mean=mean, covariance=cov)


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(mat)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.T


def frechet_distance(a: GaussianFit, b: GaussianFit) -> float:
    """Frechet distance between two Gaussian fits of equal dimension.

    The cross term uses Tr((S_a S_b)^(1/2)) = Tr((A S_b A)^(1/2)) with
    A = S_a^(1/2), computed by symmetric eigendecomposition; tiny negative
    eigenvalues from roundoff are clamped to zero.
    """
    if a.mean.shape != b.mean.shape:
        raise ShapeMismatchError(
            f"dimension mismatch: {a.mean.shape} vs {b.mean.shape}"
        )
    for fit in (a, b):
        if not (np.isfinite(fit.mean).all() and np.isfinite(fit.covariance).all()):
            raise NumericError("Gaussian fit contains NaN or Inf")

    mean_gap = float(np.sum((a.mean - b.mean) ** 2))
    root_a = _psd_sqrt(a.covariance)
    inner = root_a @ b.covariance @ root_a
    inner = (inner + inner.T) / 2.0
    vals = np.linalg.eigvalsh(inner)
    if vals.min() < _EIG_FLOOR * max(1.0, float(np.abs(vals).max())):
        raise NumericError(f"cross matrix far from PSD: min eigenvalue {vals.min():g}")
    trace_sqrt = float(np.sqrt(np.clip(vals, 0.0, None)).sum())

    dist = (
        mean_gap
        + float(np.trace(a.covariance))
        + float(np.trace(b.covariance))
        - 2.0 * trace_sqrt
    )
    if dist < 0.0:
        if dist < _DISTANCE_FLOOR:
            raise NumericError(f"distance {dist:g} negative beyond tolerance")
        dist = 0.0
    return dist


def _window_mean_amplitudes(ds: FeatureDataset, start: int, window: int) -> np.ndarray:
    block = ds.features[:, start : start + window, :].astype(np.float64)
    return np.abs(block.mean(axis=1))


def sliding_frechet(
    real: FeatureDataset,
    fake: FeatureDataset,
    window: int = DEFAULT_WINDOW,
    stride: int = DEFAULT_STRIDE,
) -> float:
    """Mean Frechet distance over temporal windows of the pair.

    Each video's window is reduced to its mean-amplitude vector; one
    distance is computed per window position (step ``stride``) and the
    positions are averaged.  With T == window this is a single plain
    Frechet distance on whole-video mean amplitudes.
    """
    if window < 1 or stride < 1:
        raise NumericError(f"window and stride must be >= 1, got {window}, {stride}")
    t = real.n_frames
    if fake.n_frames != t or fake.n_dims != real.n_dims:
        raise ShapeMismatchError(
            f"pair disagrees: real (T={t}, d={real.n_dims}) vs "
            f"fake (T={fake.n_frames}, d={fake.n_dims})"
        )
    if t < window:
        raise ShapeMismatchError(f"T={t} is shorter than window={window}")

    scores = []
    for start in range(0, t - window + 1, stride):
        fit_real = fit_gaussian(_window_mean_amplitudes(real, start, window))
        fit_fake = fit_gaussian(_window_mean_amplitudes(fake, start, window))
        scores.append(frechet_distance(fit_real, fit_fake))
    return float(np.mean(scores))
