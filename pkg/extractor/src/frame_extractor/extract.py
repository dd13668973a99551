"""Extraction jobs: video files -> (N, T, d) feature / (N, T, H, W, C) raw files.

Output files use the NumPy ``.npy`` v1.0 layout shared with the metric
engine (features float32, raw frames uint8) plus a JSON sidecar manifest
recording the encoder, the preprocessing recipe and the clip list, so
scores computed downstream stay attributable to an exact extraction
setup.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .decode import (
    DecodeError,
    center_crop,
    decode_video,
    list_videos,
    resize_frames,
    resize_shorter_side,
    subsample_frames,
    to_grayscale,
)
from .encoders import load_encoder

log = logging.getLogger(__name__)


class ExtractionError(Exception):
    """No usable clips or unwritable output."""


@dataclass
class ExtractionJob:
    """What to extract: inputs, temporal/ spatial shaping, encoder, output."""

    video_dir: str | Path | None = None
    files: list[str | Path] | None = None
    frames_per_clip: int = 16
    resize: int = 146
    crop: int = 128
    encoder: str = "mean_pool"
    output_path: str | Path = "features.npy"
    batch_size: int = 64
    grayscale: bool = False  # raw extraction only

    def resolve_files(self) -> list[Path]:
        if self.files is not None:
            return sorted((Path(f) for f in self.files), key=lambda p: p.name)
        if self.video_dir is not None:
            return list_videos(self.video_dir)
        raise ExtractionError("job needs video_dir or an explicit file list")


def _gather_clips(job: ExtractionJob, want_size: int | None):
    """Decode, subsample and optionally resize every usable clip.

    Returns (clip tensors, used names, skip records).
    """
    clips, used, skipped = [], [], []
    for path in job.resolve_files():
        try:
            frames = decode_video(path)
            frames = subsample_frames(frames, job.frames_per_clip)
        except DecodeError as exc:
            log.warning("skipping %s: %s", path.name, exc)
            skipped.append({"file": path.name, "reason": str(exc)})
            continue
        if want_size is not None:
            frames = resize_frames(frames, want_size)
        clips.append(frames)
        used.append(path.name)
    if not clips:
        raise ExtractionError("no usable clips")
    return clips, used, skipped


def _write_sidecar(path: Path, payload: dict) -> None:
    Path(str(path) + ".json").write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8"
    )


def extract(job: ExtractionJob) -> Path:
    """Run the encoder on every frame of every usable clip.

    Per clip: uniform subsample to T frames, resize the shorter side,
    center crop, encode.  Rows follow sorted file-name order.  Returns
    the output path; a `<output>.json` sidecar lists the setup.
    """
    encoder = load_encoder(job.encoder)
    clips, used, skipped = _gather_clips(job, want_size=None)

    prepared = []
    for frames in clips:
        frames = resize_shorter_side(frames, job.resize)
        prepared.append(center_crop(frames, job.crop))

    t = job.frames_per_clip
    stacked = np.concatenate(prepared, axis=0)  # (N*T, crop, crop, 3)
    chunks = [
        encoder.encode(stacked[s : s + job.batch_size])
        for s in range(0, stacked.shape[0], job.batch_size)
    ]
    flat = np.concatenate(chunks, axis=0).astype(np.float32)
    features = flat.reshape(len(prepared), t, encoder.dim)

    out = Path(job.output_path)
    np.save(out, features)
    _write_sidecar(
        out,
        {
            "schema": 1,
            "kind": "features",
            "encoder": encoder.identifier,
            "feature_dim": encoder.dim,
            "frames_per_clip": t,
            "preprocess": {
                "resize_shorter_side": job.resize,
                "center_crop": job.crop,
                **encoder.preprocess_recipe,
            },
            "clips": used,
            "skipped": skipped,
        },
    )
    return out


def extract_raw(job: ExtractionJob) -> Path:
    """Decode + resize only: write a (N, T, H, W, C) uint8 frame file."""
    clips, used, skipped = _gather_clips(job, want_size=job.crop)
    if job.grayscale:
        clips = [to_grayscale(frames) for frames in clips]
    frames = np.stack(clips).astype(np.uint8)

    out = Path(job.output_path)
    np.save(out, frames)
    _write_sidecar(
        out,
        {
            "schema": 1,
            "kind": "raw_frames",
            "frames_per_clip": job.frames_per_clip,
            "preprocess": {"resize": job.crop, "grayscale": job.grayscale},
            "clips": used,
            "skipped": skipped,
        },
    )
    return out
