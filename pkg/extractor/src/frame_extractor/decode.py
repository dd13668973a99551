"""Video decoding helpers built on OpenCV."""

from __future__ import annotations

from pathlib import Path

import cv2
import numpy as np

VIDEO_EXTENSIONS = (".avi", ".mp4", ".mov", ".mkv", ".webm", ".m4v")


class DecodeError(Exception):
    """File could not be opened or yielded no frames."""


def decode_video(path: str | Path) -> np.ndarray:
    """Read every frame of a video as one (n, H, W, 3) RGB uint8 tensor."""
    cap = cv2.VideoCapture(str(path))
    if not cap.isOpened():
        raise DecodeError(f"cannot open {path}")
    frames = []
    while True:
        ok, frame = cap.read()
        if not ok:
            break
        frames.append(cv2.cvtColor(frame, cv2.COLOR_BGR2RGB))
    cap.release()
    if not frames:
        raise DecodeError(f"no decodable frames in {path}")
    return np.stack(frames)


def subsample_frames(frames: np.ndarray, t: int) -> np.ndarray:
    """Uniform temporal subsampling of (n, ...) frames to exactly t."""
    n = frames.shape[0]
    if n < t:
        raise DecodeError(f"clip has {n} frames, need at least {t}")
    idx = np.floor(np.arange(t) * n / t).astype(np.int64)
    return frames[idx]


def resize_frames(frames: np.ndarray, size: int) -> np.ndarray:
    """Resize (t, H, W, C) frames so both sides equal `size`."""
    out = np.empty((frames.shape[0], size, size, frames.shape[3]), dtype=frames.dtype)
    for i, frame in enumerate(frames):
        resized = cv2.resize(frame, (size, size), interpolation=cv2.INTER_AREA)
        out[i] = resized if resized.ndim == 3 else resized[:, :, None]
    return out


def resize_shorter_side(frames: np.ndarray, size: int) -> np.ndarray:
    """Resize (t, H, W, C) frames so the shorter side equals `size`."""
    t, h, w, c = frames.shape
    if h <= w:
        nh, nw = size, max(1, round(w * size / h))
    else:
        nh, nw = max(1, round(h * size / w)), size
    out = np.empty((t, nh, nw, c), dtype=frames.dtype)
    for i, frame in enumerate(frames):
        resized = cv2.resize(frame, (nw, nh), interpolation=cv2.INTER_AREA)
        out[i] = resized if resized.ndim == 3 else resized[:, :, None]
    return out


def center_crop(frames: np.ndarray, size: int) -> np.ndarray:
    """Center crop (t, H, W, C) frames to size x size."""
    _, h, w, _ = frames.shape
    if h < size or w < size:
        raise DecodeError(f"frames {h}x{w} smaller than crop size {size}")
    top = (h - size) // 2
    left = (w - size) // 2
    return frames[:, top : top + size, left : left + size, :]


def to_grayscale(frames: np.ndarray) -> np.ndarray:
    """Collapse (t, H, W, 3) RGB frames to (t, H, W, 1) luma."""
    out = np.empty(frames.shape[:3] + (1,), dtype=frames.dtype)
    for i, frame in enumerate(frames):
        out[i, :, :, 0] = cv2.cvtColor(frame, cv2.COLOR_RGB2GRAY)
    return out


def list_videos(video_dir: str | Path) -> list[Path]:
    """Video files under a directory, sorted by file name."""
    root = Path(video_dir)
    files = [p for p in root.iterdir() if p.suffix.lower() in VIDEO_EXTENSIONS]
    return sorted(files, key=lambda p: p.name)
