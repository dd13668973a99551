"""STREAM-F and STREAM-D: fidelity and diversity via k-NN supports.

Each dataset is reduced to one point per video (its zero-frequency mean
amplitude).  The support of a point set is estimated as the union of
spheres centered at the points, each with radius equal to the distance to
its k-th nearest neighbor (self excluded, k = 5 by default).  Fidelity is
the fraction of fake points inside the real support; diversity is the
fraction of real points inside the fake support.  Neighbor search is
exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, ShapeMismatchError, ValidationError
from .spectral import MeanAmplitudeSet

DEFAULT_K = 5

# Cap on elements of the (rows, m, d) difference block built per chunk.
_CHUNK_ELEMS = 1 << 24


@dataclass
class SupportEstimate:
    """Sphere-union support: centers (N, d), per-center radii (N,)."""

    centers: np.ndarray
    radii: np.ndarray
    k: int


@dataclass
class StreamSScore:
    fidelity: float
    diversity: float
    k: int


def _as_points(obj: MeanAmplitudeSet | np.ndarray) -> np.ndarray:
    points = np.asarray(getattr(obj, "points", obj), dtype=np.float64)
    if points.ndim != 2:
        raise ValidationError(f"point set must be (N, d), got shape {points.shape}")
    if not np.isfinite(points).all():
        raise ValidationError("point set contains NaN or Inf")
    return points


def pairwise_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact Euclidean distance matrix (len(a), len(b)).

    Uses plain difference/square/sum per pair (no dot-product shortcut) so
    results are reproducible against a brute-force evaluation.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n, d = a.shape
    m = b.shape[0]
    out = np.empty((n, m), dtype=np.float64)
    chunk = max(1, _CHUNK_ELEMS // max(1, m * d))
    for s in range(0, n, chunk):
        e = min(s + chunk, n)
        diff = a[s:e, None, :] - b[None, :, :]
        out[s:e] = np.sqrt(np.sum(diff * diff, axis=-1))
    return out


def knn_radii(points: MeanAmplitudeSet | np.ndarray, k: int = DEFAULT_K) -> SupportEstimate:
    """Distance to the k-th nearest neighbor of every point, self excluded."""
    pts = _as_points(points)
    n = pts.shape[0]
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if n <= k:
        raise InsufficientDataError(f"need at least k+1={k + 1} points, got {n}")
    dists = pairwise_distances(pts, pts)
    np.fill_diagonal(dists, np.inf)
    radii = np.partition(dists, k - 1, axis=1)[:, k - 1]
    return SupportEstimate(centers=pts, radii=radii, k=k)


def membership(query: np.ndarray, support: SupportEstimate) -> bool:
    """True iff the query lies inside any support sphere (boundary included)."""
    q = np.asarray(query, dtype=np.float64)
    if q.ndim != 1 or q.shape[0] != support.centers.shape[1]:
        raise ShapeMismatchError(
            f"query has shape {q.shape}, support is {support.centers.shape[1]}-dimensional"
        )
    dists = pairwise_distances(q[None, :], support.centers)[0]
    return bool(np.any(dists <= support.radii))


def stream_s(
    real: MeanAmplitudeSet | np.ndarray,
    fake: MeanAmplitudeSet | np.ndarray,
    k: int = DEFAULT_K,
) -> StreamSScore:
    """Fidelity/diversity of fake vs real mean-amplitude point sets."""
    real_pts = _as_points(real)
    fake_pts = _as_points(fake)
    if real_pts.shape[1] != fake_pts.shape[1]:
        raise ShapeMismatchError(
            f"dimension mismatch: real d={real_pts.shape[1]}, fake d={fake_pts.shape[1]}"
        )
    real_support = knn_radii(real_pts, k)
    fake_support = knn_radii(fake_pts, k)

    cross = pairwise_distances(fake_pts, real_pts)  # (M, N)
    inside_real = np.any(cross <= real_support.radii[None, :], axis=1)
    inside_fake = np.any(cross.T <= fake_support.radii[None, :], axis=1)
    return StreamSScore(
        fidelity=float(inside_real.mean()),
        diversity=float(inside_fake.mean()),
        k=k,
    )
