"""Synthetic dataset generation and the distortion protocol suite.

The generator synthesizes feature sequences with a controlled spectral
exponent: per (video, dimension) it draws a random complex half-spectrum
whose expected magnitude at bin i is proportional to ``i**-alpha`` (plus
a randomized zero-frequency component around ``base_offset``) and
inverse-transforms it to a real sequence.  Distortions come in two
groups: temporal ones (frame swaps, stop scenes, reversal, FPS
resampling, constant offsets) that operate on any (N, T, ...) dataset,
and pixel ones (noise, jitter, blur, translation, flip) that operate on
uint8 raw-frame tensors with clamping to [0, 255].

Every random operation is fully determined by a 64-bit seed.  Per-video
randomness uses the sub-seed ``seed XOR video_index`` so a parallel
per-video execution reproduces the serial output exactly.  Generator:
numpy PCG64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import ndimage

from .errors import InsufficientDataError, ValidationError
from .feature_io import FeatureDataset, RawVideoDataset

RNG_NAME = "pcg64"


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


def _video_rng(seed: int, index: int) -> np.random.Generator:
    return _rng((int(seed) ^ int(index)) & 0xFFFFFFFFFFFFFFFF)


# ---------------------------------------------------------------------------
# Synthetic generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of a synthetic feature dataset with a planted spectrum."""

    n_videos: int
    t_frames: int
    d_dims: int
    spectral_exponent: float = 1.0
    base_offset: float = 2.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_videos < 1 or self.t_frames < 4 or self.d_dims < 1:
            raise ValidationError(
                f"invalid synthetic shape ({self.n_videos}, {self.t_frames}, {self.d_dims})"
            )
        if self.spectral_exponent < 0:
            raise ValidationError(
                f"spectral exponent must be >= 0, got {self.spectral_exponent}"
            )
        if self.base_offset < 0:
            raise ValidationError(f"base offset must be >= 0, got {self.base_offset}")


def generate_synthetic(spec: SyntheticSpec) -> FeatureDataset:
    """Realize the planted power-law spectrum as a float32 feature tensor.

    Interior bins get complex Gaussian coefficients scaled by
    ``i**-alpha`` (Rayleigh magnitudes, uniform phases); the Nyquist bin,
    when present, gets a real Gaussian one.  The zero bin is
    ``base_offset`` plus a unit Gaussian per (video, dimension) so that
    per-video mean amplitudes form a non-degenerate point cloud.
    """
    n, t, d = spec.n_videos, spec.t_frames, spec.d_dims
    alpha = spec.spectral_exponent
    half = t // 2
    has_nyquist = t % 2 == 0
    n_interior = half - 1 if has_nyquist else half

    rng = _rng(spec.seed)
    dc = spec.base_offset + rng.standard_normal((n, d))
    interior = rng.standard_normal((n, n_interior, d, 2))

    spectrum = np.zeros((n, half + 1, d), dtype=np.complex128)
    spectrum[:, 0, :] = t * dc
    if n_interior:
        mags = np.arange(1, n_interior + 1, dtype=np.float64) ** (-alpha)
        coeffs = (interior[..., 0] + 1j * interior[..., 1]) / np.sqrt(2.0)
        spectrum[:, 1 : n_interior + 1, :] = t * mags[None, :, None] * coeffs
    if has_nyquist:
        nyq = rng.standard_normal((n, d))
        spectrum[:, half, :] = t * float(half) ** (-alpha) * nyq

    series = np.fft.irfft(spectrum, n=t, axis=1)
    return FeatureDataset(series.astype(np.float32), source_id=f"synthetic(seed={spec.seed})")


# ---------------------------------------------------------------------------
# Temporal distortions (feature or raw datasets)
# ---------------------------------------------------------------------------

Dataset = FeatureDataset | RawVideoDataset


def _data(ds: Dataset) -> np.ndarray:
    return ds.features if isinstance(ds, FeatureDataset) else ds.frames


def _rebuild(ds: Dataset, arr: np.ndarray) -> Dataset:
    if isinstance(ds, FeatureDataset):
        return FeatureDataset(arr, source_id=ds.source_id)
    return RawVideoDataset(arr, source_id=ds.source_id)


def _check_count(count: int) -> int:
    if count < 0 or int(count) != count:
        raise ValidationError(f"count must be a non-negative integer, got {count}")
    return int(count)


def local_swap(ds: Dataset, swaps_per_video: int, seed: int = 0) -> Dataset:
    """Exchange two uniformly chosen distinct frames, `count` times per video."""
    count = _check_count(swaps_per_video)
    data = _data(ds)
    out = data.copy()
    if count == 0:
        return _rebuild(ds, out)
    t = data.shape[1]
    if t < 2:
        raise ValidationError("need at least 2 frames to swap")
    for n in range(data.shape[0]):
        rng = _video_rng(seed, n)
        for _ in range(count):
            i = int(rng.integers(t))
            j = int(rng.integers(t - 1))
            if j >= i:
                j += 1
            out[n, [i, j]] = out[n, [j, i]]
    return _rebuild(ds, out)


def global_swap(ds: Dataset, swaps_per_video: int, seed: int = 0) -> Dataset:
    """Replace `count` random frames per video with frames of other videos.

    Donor frames come from the undistorted original at a random time
    index of a uniformly chosen different video.
    """
    count = _check_count(swaps_per_video)
    data = _data(ds)
    out = data.copy()
    if count == 0:
        return _rebuild(ds, out)
    n_videos, t = data.shape[0], data.shape[1]
    if n_videos < 2:
        raise InsufficientDataError("global swap needs at least 2 videos")
    for n in range(n_videos):
        rng = _video_rng(seed, n)
        for _ in range(count):
            t_dst = int(rng.integers(t))
            donor = int(rng.integers(n_videos - 1))
            if donor >= n:
                donor += 1
            t_src = int(rng.integers(t))
            out[n, t_dst] = data[donor, t_src]
    return _rebuild(ds, out)


def stop_scene(ds: Dataset, ratio: float, seed: int = 0) -> Dataset:
    """Replace floor(ratio*N) uniformly chosen videos by their first frame."""
    if not 0.0 <= ratio <= 1.0:
        raise ValidationError(f"ratio must be in [0, 1], got {ratio}")
    data = _data(ds)
    out = data.copy()
    n_replace = int(np.floor(ratio * data.shape[0]))
    if n_replace == 0:
        return _rebuild(ds, out)
    chosen = _rng(seed).choice(data.shape[0], size=n_replace, replace=False)
    for n in chosen:
        out[n, :] = out[n, 0]
    return _rebuild(ds, out)


def full_reverse(ds: Dataset) -> Dataset:
    """Reverse the frame order of every video."""
    return _rebuild(ds, np.ascontiguousarray(_data(ds)[:, ::-1]))


def partial_reverse(ds: Dataset, runs_per_video: int, seed: int = 0) -> Dataset:
    """Reverse `count` random 3-frame runs per video."""
    count = _check_count(runs_per_video)
    data = _data(ds)
    out = data.copy()
    if count == 0:
        return _rebuild(ds, out)
    t = data.shape[1]
    if t < 3:
        raise ValidationError("need at least 3 frames for a partial reverse")
    for n in range(data.shape[0]):
        rng = _video_rng(seed, n)
        for _ in range(count):
            s = int(rng.integers(t - 2))
            out[n, s : s + 3] = out[n, s : s + 3][::-1]
    return _rebuild(ds, out)


def fps_resample(ds: Dataset, rate: float) -> Dataset:
    """Slow a video down: output frame t shows input frame floor(t*rate)."""
    if not 0.0 < rate <= 1.0:
        raise ValidationError(f"rate must be in (0, 1], got {rate}")
    data = _data(ds)
    if rate == 1.0:
        return _rebuild(ds, data.copy())
    t = data.shape[1]
    idx = np.floor(np.arange(t) * rate).astype(np.int64)
    return _rebuild(ds, np.ascontiguousarray(data[:, idx]))


def constant_offset(ds: FeatureDataset, magnitude: float, seed: int = 0) -> FeatureDataset:
    """Add one fixed random direction, scaled to `magnitude`, to every frame.

    A purely spatial perturbation in feature space: per-video spectra
    change only at frequency zero.  The result keeps float64 so the shift
    is exact through the 64-bit metric pipeline.
    """
    if magnitude < 0:
        raise ValidationError(f"magnitude must be >= 0, got {magnitude}")
    if not isinstance(ds, FeatureDataset):
        raise ValidationError("constant offset applies to feature datasets only")
    if magnitude == 0:
        return FeatureDataset(ds.features.copy(), source_id=ds.source_id)
    direction = _rng(seed).standard_normal(ds.n_dims)
    direction = direction / np.linalg.norm(direction)
    shifted = ds.features.astype(np.float64) + magnitude * direction
    return FeatureDataset(shifted, source_id=ds.source_id)


# ---------------------------------------------------------------------------
# Pixel distortions (raw datasets only)
# ---------------------------------------------------------------------------


def _check_raw(ds: Dataset) -> RawVideoDataset:
    if not isinstance(ds, RawVideoDataset):
        raise ValidationError("this distortion needs raw video frames, not features")
    return ds


def _to_uint8(arr: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(arr), 0, 255).astype(np.uint8)


def gaussian_noise(
    ds: RawVideoDataset, sigma: float, seed: int = 0, per_frame: bool = False
) -> RawVideoDataset:
    """Add sigma-scaled Gaussian noise to every pixel.

    By default one noise field is drawn per video and applied identically
    to all of its frames, leaving frame-to-frame differences untouched;
    ``per_frame=True`` draws an independent field per frame.
    """
    ds = _check_raw(ds)
    if sigma < 0:
        raise ValidationError(f"sigma must be >= 0, got {sigma}")
    out = ds.frames.copy()
    if sigma == 0:
        return RawVideoDataset(out, source_id=ds.source_id)
    _, t, h, w, c = ds.frames.shape
    for n in range(ds.n_videos):
        rng = _video_rng(seed, n)
        shape = (t, h, w, c) if per_frame else (h, w, c)
        noise = sigma * rng.standard_normal(shape)
        out[n] = _to_uint8(ds.frames[n].astype(np.float64) + noise)
    return RawVideoDataset(out, source_id=ds.source_id)


def salt_pepper(
    ds: RawVideoDataset, prob: float, seed: int = 0, per_frame: bool = False
) -> RawVideoDataset:
    """Force a `prob` fraction of pixel positions to black or white."""
    ds = _check_raw(ds)
    if not 0.0 <= prob <= 1.0:
        raise ValidationError(f"probability must be in [0, 1], got {prob}")
    out = ds.frames.copy()
    if prob == 0:
        return RawVideoDataset(out, source_id=ds.source_id)
    _, t, h, w, _ = ds.frames.shape
    for n in range(ds.n_videos):
        rng = _video_rng(seed, n)
        shape = (t, h, w) if per_frame else (h, w)
        hit = rng.random(shape) < prob
        salt = rng.random(shape) < 0.5
        if not per_frame:
            hit = np.broadcast_to(hit, (t, h, w))
            salt = np.broadcast_to(salt, (t, h, w))
        out[n][hit & salt] = 255
        out[n][hit & ~salt] = 0
    return RawVideoDataset(out, source_id=ds.source_id)


def color_jitter(ds: RawVideoDataset, strength: float, seed: int = 0) -> RawVideoDataset:
    """Scale RGB channels by one random gain triple per video."""
    ds = _check_raw(ds)
    if strength < 0:
        raise ValidationError(f"strength must be >= 0, got {strength}")
    if ds.frames.shape[-1] != 3:
        raise ValidationError("color jitter needs 3-channel frames")
    out = ds.frames.copy()
    if strength == 0:
        return RawVideoDataset(out, source_id=ds.source_id)
    for n in range(ds.n_videos):
        rng = _video_rng(seed, n)
        gains = np.clip(1.0 + strength * rng.uniform(-1.0, 1.0, size=3), 0.0, None)
        out[n] = _to_uint8(ds.frames[n].astype(np.float64) * gains)
    return RawVideoDataset(out, source_id=ds.source_id)


def luminance_shift(ds: RawVideoDataset, intensity: float) -> RawVideoDataset:
    """Compress pixel values toward mid-gray: 128 + (x-128)*(1-intensity)."""
    ds = _check_raw(ds)
    if not 0.0 <= intensity <= 1.0:
        raise ValidationError(f"intensity must be in [0, 1], got {intensity}")
    if intensity == 0:
        return RawVideoDataset(ds.frames.copy(), source_id=ds.source_id)
    shifted = 128.0 + (ds.frames.astype(np.float64) - 128.0) * (1.0 - intensity)
    return RawVideoDataset(_to_uint8(shifted), source_id=ds.source_id)


def gaussian_blur(ds: RawVideoDataset, sigma: float) -> RawVideoDataset:
    """Blur each frame spatially with a Gaussian kernel, reflect-padded."""
    ds = _check_raw(ds)
    if sigma < 0:
        raise ValidationError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return RawVideoDataset(ds.frames.copy(), source_id=ds.source_id)
    blurred = ndimage.gaussian_filter(
        ds.frames.astype(np.float64), sigma=(0, 0, sigma, sigma, 0), mode="reflect"
    )
    return RawVideoDataset(_to_uint8(blurred), source_id=ds.source_id)


def random_translation(ds: RawVideoDataset, pixels: int, seed: int = 0) -> RawVideoDataset:
    """Shift each frame by `pixels` in a random diagonal direction.

    Each frame independently moves by (+-pixels, +-pixels); vacated areas
    are filled by reflection of the frame content.
    """
    ds = _check_raw(ds)
    pixels = _check_count(pixels)
    out = ds.frames.copy()
    if pixels == 0:
        return RawVideoDataset(out, source_id=ds.source_id)
    _, t, h, w, _ = ds.frames.shape
    p = pixels
    for n in range(ds.n_videos):
        rng = _video_rng(seed, n)
        signs = rng.integers(0, 2, size=(t, 2)) * 2 - 1
        for ti in range(t):
            padded = np.pad(ds.frames[n, ti], ((p, p), (p, p), (0, 0)), mode="symmetric")
            dy, dx = int(signs[ti, 0]) * p, int(signs[ti, 1]) * p
            out[n, ti] = padded[p - dy : p - dy + h, p - dx : p - dx + w]
    return RawVideoDataset(out, source_id=ds.source_id)


def horizontal_flip(ds: RawVideoDataset) -> RawVideoDataset:
    """Mirror every frame left-right."""
    ds = _check_raw(ds)
    return RawVideoDataset(
        np.ascontiguousarray(ds.frames[:, :, :, ::-1, :]), source_id=ds.source_id
    )


# ---------------------------------------------------------------------------
# Uniform distortion dispatch
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistortionSpec:
    """One distortion run: kind, intensity and the seed that fixes it."""

    kind: str
    intensity: float = 0.0
    seed: int = 0
    per_frame: bool = False

    def __post_init__(self) -> None:
        if self.kind not in DISTORTIONS:
            raise ValidationError(
                f"unknown distortion kind {self.kind!r}; known: {sorted(DISTORTIONS)}"
            )


@dataclass(frozen=True)
class _Entry:
    apply: Callable[[Dataset, DistortionSpec], Dataset]
    space: str  # "temporal" (any dataset), "feature", or "pixel"
    uses_seed: bool = True


DISTORTIONS: dict[str, _Entry] = {
    "local_swap": _Entry(lambda ds, s: local_swap(ds, int(s.intensity), s.seed), "temporal"),
    "global_swap": _Entry(lambda ds, s: global_swap(ds, int(s.intensity), s.seed), "temporal"),
    "stop_scene": _Entry(lambda ds, s: stop_scene(ds, s.intensity, s.seed), "temporal"),
    "full_reverse": _Entry(lambda ds, s: full_reverse(ds), "temporal", uses_seed=False),
    "partial_reverse": _Entry(
        lambda ds, s: partial_reverse(ds, int(s.intensity), s.seed), "temporal"
    ),
    "fps_resample": _Entry(
        lambda ds, s: fps_resample(ds, s.intensity), "temporal", uses_seed=False
    ),
    "constant_offset": _Entry(
        lambda ds, s: constant_offset(ds, s.intensity, s.seed), "feature"
    ),
    "gaussian_noise": _Entry(
        lambda ds, s: gaussian_noise(ds, s.intensity, s.seed, s.per_frame), "pixel"
    ),
    "salt_pepper": _Entry(
        lambda ds, s: salt_pepper(ds, s.intensity, s.seed, s.per_frame), "pixel"
    ),
    "color_jitter": _Entry(lambda ds, s: color_jitter(ds, s.intensity, s.seed), "pixel"),
    "luminance_shift": _Entry(
        lambda ds, s: luminance_shift(ds, s.intensity), "pixel", uses_seed=False
    ),
    "gaussian_blur": _Entry(
        lambda ds, s: gaussian_blur(ds, s.intensity), "pixel", uses_seed=False
    ),
    "random_translation": _Entry(
        lambda ds, s: random_translation(ds, int(s.intensity), s.seed), "pixel"
    ),
    "horizontal_flip": _Entry(
        lambda ds, s: horizontal_flip(ds), "pixel", uses_seed=False
    ),
}

FEATURE_KINDS = tuple(
    k for k, e in DISTORTIONS.items() if e.space in ("temporal", "feature")
)
PIXEL_KINDS = tuple(k for k, e in DISTORTIONS.items() if e.space == "pixel")


def apply_distortion(ds: Dataset, spec: DistortionSpec) -> Dataset:
    """Apply one DistortionSpec, checking the dataset kind fits."""
    entry = DISTORTIONS[spec.kind]
    if entry.space == "pixel" and not isinstance(ds, RawVideoDataset):
        raise ValidationError(f"distortion {spec.kind!r} needs a raw video dataset")
    if entry.space == "feature" and not isinstance(ds, FeatureDataset):
        raise ValidationError(f"distortion {spec.kind!r} needs a feature dataset")
    return entry.apply(ds, spec)
