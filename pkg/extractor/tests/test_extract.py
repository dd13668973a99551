import json
import shutil

import numpy as np
import pytest

from frame_extractor import (
    ExtractionError,
    ExtractionJob,
    extract,
    extract_raw,
)
from frame_extractor.cli import main

from conftest import write_counter_clip


def job_for(clip_dir, out, **overrides):
    params = dict(
        video_dir=clip_dir,
        frames_per_clip=16,
        resize=72,
        crop=64,
        encoder="mean_pool",
        output_path=out,
    )
    params.update(overrides)
    return ExtractionJob(**params)


def test_feature_shapes_and_sidecar(clip_dir, tmp_path):
    out = extract(job_for(clip_dir, tmp_path / "feats.npy"))
    feats = np.load(out)
    assert feats.shape == (3, 16, 192)
    assert feats.dtype == np.float32
    assert np.isfinite(feats).all()

    manifest = json.loads((tmp_path / "feats.npy.json").read_text())
    assert manifest["encoder"] == "mean_pool8"
    assert manifest["clips"] == ["a_first.avi", "b_mid.avi", "c_last.avi"]
    assert manifest["preprocess"]["center_crop"] == 64
    assert manifest["skipped"] == []


def test_rows_follow_sorted_file_names(clip_dir, tmp_path):
    feats = np.load(extract(job_for(clip_dir, tmp_path / "feats.npy")))
    row_means = feats.mean(axis=(1, 2))
    # brightness bases were 20 < 90 < 160 in sorted-name order
    assert row_means[0] < row_means[1] < row_means[2]


def test_frame_order_is_strictly_temporal(clip_dir, tmp_path):
    feats = np.load(extract(job_for(clip_dir, tmp_path / "feats.npy")))
    per_frame = feats.mean(axis=2)
    for n in range(feats.shape[0]):
        assert np.all(np.diff(per_frame[n]) > 0)


def test_duplicated_clip_gives_identical_rows(clip_dir, tmp_path):
    shutil.copy(clip_dir / "a_first.avi", clip_dir / "a_first_copy.avi")
    feats = np.load(extract(job_for(clip_dir, tmp_path / "feats.npy")))
    assert feats.shape[0] == 4
    assert np.array_equal(feats[0], feats[1])


def test_short_and_undecodable_clips_skipped(clip_dir, tmp_path):
    write_counter_clip(clip_dir / "too_short.avi", n_frames=8)
    (clip_dir / "garbage.avi").write_bytes(b"this is not a video")
    out = extract(job_for(clip_dir, tmp_path / "feats.npy"))
    feats = np.load(out)
    assert feats.shape[0] == 3
    manifest = json.loads((tmp_path / "feats.npy.json").read_text())
    skipped = {entry["file"] for entry in manifest["skipped"]}
    assert skipped == {"too_short.avi", "garbage.avi"}


def test_zero_usable_clips_fails(tmp_path):
    empty = tmp_path / "none"
    empty.mkdir()
    (empty / "garbage.avi").write_bytes(b"nope")
    with pytest.raises(ExtractionError):
        extract(job_for(empty, tmp_path / "feats.npy"))


def test_extraction_is_deterministic(clip_dir, tmp_path):
    o1 = extract(job_for(clip_dir, tmp_path / "f1.npy"))
    o2 = extract(job_for(clip_dir, tmp_path / "f2.npy"))
    assert o1.read_bytes() == o2.read_bytes()


def test_extract_raw_shapes(clip_dir, tmp_path):
    out = extract_raw(job_for(clip_dir, tmp_path / "raw.npy", crop=48))
    raw = np.load(out)
    assert raw.shape == (3, 16, 48, 48, 3)
    assert raw.dtype == np.uint8


def test_extract_raw_grayscale(clip_dir, tmp_path):
    out = extract_raw(job_for(clip_dir, tmp_path / "gray.npy", crop=48, grayscale=True))
    raw = np.load(out)
    assert raw.shape == (3, 16, 48, 48, 1)


def test_cli_round_trip(clip_dir, tmp_path):
    out = tmp_path / "cli.npy"
    code = main(
        ["--videos", str(clip_dir), "--t", "16", "--resize", "72", "--crop", "64",
         "--encoder", "mean_pool", "--out", str(out)]
    )
    assert code == 0
    assert np.load(out).shape == (3, 16, 192)

    code = main(["--videos", str(tmp_path), "--out", str(tmp_path / "x.npy")])
    assert code == 1  # no videos there
