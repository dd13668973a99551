"""Temporal amplitude spectra of per-frame feature sequences.

Each feature dimension of a video is a length-T signal.  Its amplitude
spectrum is the modulus of the discrete Fourier coefficients over the
non-negative frequency bins, normalized by 1/T so that bin 0 equals the
magnitude of the frame-wise mean (the "mean amplitude").  No windowing,
detrending or padding is applied.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .feature_io import FeatureDataset

MIN_FRAMES = 4


@dataclass
class AmplitudeSpectrum:
    """Amplitudes of one video, shape (d, F+1) with F = floor(T/2).

    ``amplitudes[k, i]`` is |sum_t x[t, k] * exp(-2j*pi*t*i/T)| / T and
    ``frequencies`` is the integer bin grid 0..F.
    """

    amplitudes: np.ndarray
    frequencies: np.ndarray


@dataclass
class MeanAmplitudeSet:
    """Zero-frequency amplitude vectors of a dataset, shape (N, d)."""

    points: np.ndarray


def amplitude_spectrum(seq: np.ndarray) -> AmplitudeSpectrum:
    """Spectrum of a single (T, d) feature sequence.

    A 1-D input of length T is treated as (T, 1).
    """
    arr = np.asarray(seq, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValidationError(f"sequence must be (T, d), got {arr.shape}")
    t = arr.shape[0]
    if t < MIN_FRAMES:
        raise ValidationError(f"sequence too short: T={t} < {MIN_FRAMES}")
    if not np.isfinite(arr).all():
        raise ValidationError("sequence contains NaN or Inf")
    amps = np.abs(np.fft.rfft(arr, axis=0)).T / t
    return AmplitudeSpectrum(
        amplitudes=amps, frequencies=np.arange(amps.shape[1], dtype=np.int64)
    )


def batch_amplitude_spectra(ds: FeatureDataset) -> np.ndarray:
    """Amplitudes for every video in a dataset, shape (N, d, F+1)."""
    feats = ds.features.astype(np.float64)
    t = feats.shape[1]
    amps = np.abs(np.fft.rfft(feats, axis=1)) / t  # (N, F+1, d)
    return np.ascontiguousarray(np.swapaxes(amps, 1, 2))


def mean_amplitude_set(ds: FeatureDataset) -> MeanAmplitudeSet:
    """Per-video zero-frequency amplitudes: |frame-wise mean| per dimension."""
    points = np.abs(ds.features.astype(np.float64).mean(axis=1))
    return MeanAmplitudeSet(points=points)
