"""Metric reports: repeated seeded measurement and JSON serialization.

A report runs every requested metric `repeats` times, subsampling
min(N, sample_size) videos per set with a per-repeat seeded draw, and
records per-repeat scores plus mean and standard deviation.  The config
echo makes every report reproducible: re-running with the echoed config
yields identical score fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .feature_io import FeatureDataset
from .frechet import DEFAULT_STRIDE, DEFAULT_WINDOW, sliding_frechet
from .harness import RNG_NAME
from .spectral import mean_amplitude_set
from .stream_s import DEFAULT_K, stream_s
from .stream_t import StreamTConfig, stream_t

SCHEMA_VERSION = 1

DEFAULT_REPEATS = 5
DEFAULT_SAMPLE_SIZE = 2048


@dataclass(frozen=True)
class ComputeConfig:
    bins: int = 50
    k: int = DEFAULT_K
    repeats: int = DEFAULT_REPEATS
    sample_size: int = DEFAULT_SAMPLE_SIZE
    seed: int = 0
    skewness_mode: str = "paper"
    include_zero_frequency: bool = False
    with_frechet: bool = False
    window: int = DEFAULT_WINDOW
    stride: int = DEFAULT_STRIDE

    def stream_t_config(self) -> StreamTConfig:
        return StreamTConfig(
            bins=self.bins,
            skewness_mode=self.skewness_mode,
            include_zero_frequency=self.include_zero_frequency,
        )


@dataclass
class MetricReport:
    scores: dict[str, dict]
    config: dict
    datasets: dict[str, dict]
    engine_version: str = __version__
    schema: int = SCHEMA_VERSION
    generated_at: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "engine_version": self.engine_version,
            "generated_at": self.generated_at,
            "config": self.config,
            "datasets": self.datasets,
            "scores": self.scores,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _subsample(ds: FeatureDataset, size: int, rng: np.random.Generator) -> FeatureDataset:
    take = min(ds.n_videos, size)
    idx = rng.choice(ds.n_videos, size=take, replace=False)
    return ds.subset(np.sort(idx))


def _summary(values: list[float]) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    return {
        "per_repeat": [float(v) for v in arr],
        "mean": float(arr.mean()),
        "std": float(arr.std()),
    }


def compute_metric_report(
    real: FeatureDataset,
    fake: FeatureDataset,
    config: ComputeConfig | None = None,
    real_path: str = "",
    fake_path: str = "",
) -> MetricReport:
    """Run STREAM-T/F/D (and optionally the Frechet baseline) with repeats."""
    cfg = config or ComputeConfig()
    t_cfg = cfg.stream_t_config()

    per_metric: dict[str, list[float]] = {"stream_t": [], "stream_f": [], "stream_d": []}
    if cfg.with_frechet:
        per_metric["frechet"] = []

    for r in range(cfg.repeats):
        rng_real = np.random.default_rng([cfg.seed & 0xFFFFFFFFFFFFFFFF, r, 0])
        rng_fake = np.random.default_rng([cfg.seed & 0xFFFFFFFFFFFFFFFF, r, 1])
        real_r = _subsample(real, cfg.sample_size, rng_real)
        fake_r = _subsample(fake, cfg.sample_size, rng_fake)

        per_metric["stream_t"].append(stream_t(real_r, fake_r, t_cfg).score)
        s_score = stream_s(
            mean_amplitude_set(real_r), mean_amplitude_set(fake_r), k=cfg.k
        )
        per_metric["stream_f"].append(s_score.fidelity)
        per_metric["stream_d"].append(s_score.diversity)
        if cfg.with_frechet:
            per_metric["frechet"].append(
                sliding_frechet(real_r, fake_r, window=cfg.window, stride=cfg.stride)
            )

    return MetricReport(
        scores={name: _summary(vals) for name, vals in per_metric.items()},
        config={
            "bins": cfg.bins,
            "k": cfg.k,
            "repeats": cfg.repeats,
            "sample_size": cfg.sample_size,
            "seed": cfg.seed,
            "skewness_mode": cfg.skewness_mode,
            "include_zero_frequency": cfg.include_zero_frequency,
            "with_frechet": cfg.with_frechet,
            "window": cfg.window,
            "stride": cfg.stride,
            "rng": RNG_NAME,
        },
        datasets={
            "real": {"path": real_path, "shape": list(real.features.shape)},
            "fake": {"path": fake_path, "shape": list(fake.features.shape)},
        },
    )
