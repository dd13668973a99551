"""Reading, validating and writing feature/raw-frame tensors.

File format is the NumPy ``.npy`` version 1.0 layout: 6-byte magic
``\\x93NUMPY``, version bytes ``(1, 0)``, a little-endian uint16 header
length, an ASCII header dict with ``descr``, ``fortran_order`` and
``shape``, then the C-order payload.  Feature files are ``(N, T, d)``
float32 (``<f4``); raw video files are ``(N, T, H, W, C)`` uint8
(``|u1``).  The reader and writer are deliberately strict so that a bad
file fails with a precise error instead of a downstream surprise.
"""

from __future__ import annotations

import ast
import json
import struct
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CorruptionError,
    FormatError,
    ShapeMismatchError,
    SmallSampleWarning,
    UnsupportedDtypeError,
    ValidationError,
)

MAGIC = b"\x93NUMPY"
_HEADER_ALIGN = 64
_SUPPORTED_DESCRS = {"f4", "f8", "u1"}

# Below this many videos per set the scores start to drift; see the
# sample-size ablation in the acceptance suite.
STABLE_SAMPLE_SIZE = 2000


@dataclass
class FeatureDataset:
    """Per-frame feature sequences for a set of videos, shape (N, T, d).

    Files store float32; in memory float64 is also accepted so derived
    datasets (e.g. offset perturbations) keep full precision through the
    64-bit computation pipeline.
    """

    features: np.ndarray
    source_id: str = ""

    def __post_init__(self) -> None:
        arr = np.asarray(self.features)
        if arr.ndim != 3:
            raise ValidationError(
                f"feature tensor must have 3 axes (N, T, d), got {arr.ndim}"
            )
        n, t, d = arr.shape
        if n < 1 or d < 1:
            raise ValidationError(f"empty dataset axes: shape {arr.shape}")
        if t < 4:
            raise ValidationError(f"need at least 4 frames per video, got T={t}")
        if arr.dtype not in (np.float32, np.float64):
            arr = arr.astype(np.float32)
        if not np.isfinite(arr).all():
            raise ValidationError("feature tensor contains NaN or Inf")
        self.features = arr

    @property
    def n_videos(self) -> int:
        return self.features.shape[0]

    @property
    def n_frames(self) -> int:
        return self.features.shape[1]

    @property
    def n_dims(self) -> int:
        return self.features.shape[2]

    def subset(self, indices: np.ndarray) -> "FeatureDataset":
        return FeatureDataset(self.features[indices], source_id=self.source_id)


@dataclass
class RawVideoDataset:
    """Uint8 pixel tensor for a set of videos, shape (N, T, H, W, C)."""

    frames: np.ndarray
    source_id: str = ""

    def __post_init__(self) -> None:
        arr = np.asarray(self.frames)
        if arr.ndim != 5:
            raise ValidationError(
                f"raw video tensor must have 5 axes (N, T, H, W, C), got {arr.ndim}"
            )
        if arr.dtype != np.uint8:
            raise ValidationError(f"raw video tensor must be uint8, got {arr.dtype}")
        n, t, h, w, c = arr.shape
        if n < 1 or t < 1:
            raise ValidationError(f"empty dataset axes: shape {arr.shape}")
        if h < 8 or w < 8:
            raise ValidationError(f"frames must be at least 8x8, got {h}x{w}")
        if c not in (1, 3):
            raise ValidationError(f"color channels must be 1 or 3, got {c}")
        self.frames = arr

    @property
    def n_videos(self) -> int:
        return self.frames.shape[0]

    @property
    def n_frames(self) -> int:
        return self.frames.shape[1]


@dataclass
class DatasetManifest:
    """Resolved pointers to a real/fake dataset pair on disk."""

    real_path: Path
    fake_path: Path
    label: str = ""
    expected_shape: tuple[int, int] | None = None  # (T, d)


def _canonical_header(descr: str, shape: tuple[int, ...]) -> bytes:
    text = "{'descr': %s, 'fortran_order': False, 'shape': %s, }" % (
        repr(descr),
        repr(shape),
    )
    # magic(6) + version(2) + hlen(2) + header + '\n' padded to 64 bytes
    unpadded = len(MAGIC) + 2 + 2 + len(text) + 1
    pad = (-unpadded) % _HEADER_ALIGN
    return (text + " " * pad + "\n").encode("latin1")


def write_array(tensor: np.ndarray, path: str | Path) -> None:
    """Write a tensor as a ``.npy`` v1.0 file.

    Float payloads must be finite, uint8 is accepted as-is, and no axis
    may be empty.  ``read_array`` inverts this byte-exactly.
    """
    arr = np.asarray(tensor)
    if arr.size == 0:
        raise ValidationError(f"refusing to write empty tensor of shape {arr.shape}")
    if arr.dtype == np.float32:
        descr = "<f4"
    elif arr.dtype == np.float64:
        descr = "<f8"
    elif arr.dtype == np.uint8:
        descr = "|u1"
    else:
        raise UnsupportedDtypeError(f"cannot write dtype {arr.dtype}")
    if arr.dtype.kind == "f" and not np.isfinite(arr).all():
        raise ValidationError("refusing to write non-finite values")

    header = _canonical_header(descr, arr.shape)
    payload = np.ascontiguousarray(arr).astype(arr.dtype.newbyteorder("<")).tobytes()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(bytes((1, 0)))
        fh.write(struct.pack("<H", len(header)))
        fh.write(header)
        fh.write(payload)


def read_array(path: str | Path) -> np.ndarray:
    """Read a ``.npy`` v1.0 file with a 3- or 5-axis supported payload.

    Raises FormatError for a malformed header, UnsupportedDtypeError for
    dtypes outside {float32, float64, uint8} and CorruptionError when the
    payload length disagrees with the declared shape.  Byte order is
    normalized to native.
    """
    with open(path, "rb") as fh:
        blob = fh.read()

    if len(blob) < 10 or blob[:6] != MAGIC:
        raise FormatError(f"{path}: not an array file (bad magic)")
    major, minor = blob[6], blob[7]
    if (major, minor) != (1, 0):
        raise FormatError(f"{path}: unsupported format version {major}.{minor}")
    (hlen,) = struct.unpack("<H", blob[8:10])
    if len(blob) < 10 + hlen:
        raise FormatError(f"{path}: header truncated")
    try:
        header = ast.literal_eval(blob[10 : 10 + hlen].decode("latin1"))
    except (ValueError, SyntaxError) as exc:
        raise FormatError(f"{path}: unparseable header: {exc}") from None
    if not isinstance(header, dict) or set(header) != {
        "descr",
        "fortran_order",
        "shape",
    }:
        raise FormatError(f"{path}: header keys invalid: {header!r}")
    if header["fortran_order"] is not False:
        raise FormatError(f"{path}: fortran-order payloads are not supported")
    shape = header["shape"]
    if (
        not isinstance(shape, tuple)
        or len(shape) not in (3, 5)
        or not all(isinstance(s, int) and s >= 0 for s in shape)
    ):
        raise FormatError(f"{path}: shape must be a 3- or 5-tuple, got {shape!r}")

    descr = header["descr"]
    if not isinstance(descr, str) or len(descr) != 3 or descr[1:] not in _SUPPORTED_DESCRS:
        raise UnsupportedDtypeError(f"{path}: unsupported dtype descr {descr!r}")
    try:
        dtype = np.dtype(descr)
    except TypeError:
        raise UnsupportedDtypeError(f"{path}: unsupported dtype descr {descr!r}") from None

    payload = blob[10 + hlen :]
    expected = int(np.prod(shape)) * dtype.itemsize
    if len(payload) != expected:
        raise CorruptionError(
            f"{path}: payload is {len(payload)} bytes, header implies {expected}"
        )
    arr = np.frombuffer(payload, dtype=dtype).reshape(shape)
    if arr.dtype.byteorder == ">":
        arr = arr.astype(arr.dtype.newbyteorder("="))
    return np.ascontiguousarray(arr)


def load_feature_dataset(path: str | Path, source_id: str | None = None) -> FeatureDataset:
    """Load and validate a (N, T, d) feature file, normalizing to float32."""
    arr = read_array(path)
    if arr.ndim != 3:
        raise ValidationError(f"{path}: expected 3 axes (N, T, d), got {arr.ndim}")
    if arr.dtype.kind != "f":
        raise ValidationError(f"{path}: feature file must be float, got {arr.dtype}")
    return FeatureDataset(arr.astype(np.float32), source_id=source_id or str(path))


def load_raw_dataset(path: str | Path, source_id: str | None = None) -> RawVideoDataset:
    """Load and validate a (N, T, H, W, C) uint8 raw-frame file."""
    arr = read_array(path)
    if arr.ndim != 5:
        raise ValidationError(f"{path}: expected 5 axes (N, T, H, W, C), got {arr.ndim}")
    if arr.dtype != np.uint8:
        raise ValidationError(f"{path}: raw video file must be uint8, got {arr.dtype}")
    return RawVideoDataset(arr, source_id=source_id or str(path))


def validate_pair(
    real: FeatureDataset, fake: FeatureDataset
) -> tuple[FeatureDataset, FeatureDataset]:
    """Check a real/fake pair agrees in (T, d); sizes N may differ.

    Emits SmallSampleWarning when either set is below the stability
    threshold of 2000 videos.
    """
    rt, rd = real.n_frames, real.n_dims
    ft, fd = fake.n_frames, fake.n_dims
    if (rt, rd) != (ft, fd):
        raise ShapeMismatchError(
            f"real set is (T={rt}, d={rd}) but fake set is (T={ft}, d={fd})"
        )
    smallest = min(real.n_videos, fake.n_videos)
    if smallest < STABLE_SAMPLE_SIZE:
        warnings.warn(
            f"smallest set has {smallest} videos; scores are stable from "
            f"about {STABLE_SAMPLE_SIZE} videos per set",
            SmallSampleWarning,
            stacklevel=2,
        )
    return real, fake


def load_manifest(path: str | Path) -> DatasetManifest:
    """Resolve a JSON manifest pointing at a real/fake file pair.

    Relative paths are resolved against the manifest's directory; both
    files must exist and parse as array files.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        real_path = Path(doc["real_path"])
        fake_path = Path(doc["fake_path"])
    except KeyError as exc:
        raise FormatError(f"{path}: manifest missing key {exc}") from None
    base = path.parent
    if not real_path.is_absolute():
        real_path = base / real_path
    if not fake_path.is_absolute():
        fake_path = base / fake_path
    for p in (real_path, fake_path):
        if not p.exists():
            raise FormatError(f"{path}: manifest references missing file {p}")
        read_array(p)  # raises if unparseable
    expected = doc.get("expected_shape")
    if expected is not None:
        expected = (int(expected[0]), int(expected[1]))
    return DatasetManifest(
        real_path=real_path,
        fake_path=fake_path,
        label=doc.get("label", ""),
        expected_shape=expected,
    )
