"""Extractor acceptance: round trip into the metric engine.

The engine is consumed strictly through its external interfaces: the
shared ``.npy`` file format and the ``stream`` CLI run as a subprocess.
"""

import json
import subprocess
import sys

import numpy as np

from frame_extractor import ExtractionJob, extract


def test_extractor_round_trip(clip_dir, tmp_path):
    out = extract(
        ExtractionJob(
            video_dir=clip_dir,
            frames_per_clip=16,
            resize=72,
            crop=64,
            encoder="mean_pool",
            output_path=tmp_path / "feats.npy",
        )
    )

    feats = np.load(out)
    assert feats.shape == (3, 16, 192)
    assert feats.dtype == np.float32

    # strictly temporal frame order on counter clips
    per_frame = feats.mean(axis=2)
    assert np.all(np.diff(per_frame, axis=1) > 0)

    report_path = tmp_path / "report.json"
    proc = subprocess.run(
        [
            sys.executable, "-m", "stream_metrics.cli", "compute",
            "--real", str(out), "--fake", str(out),
            "--repeats", "1", "--sample-size", "3", "--k", "2",
            "--out", str(report_path),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads(report_path.read_text())
    assert report["scores"]["stream_t"]["mean"] == 1.0
    assert report["datasets"]["real"]["shape"] == [3, 16, 192]
