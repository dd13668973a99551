"""Command-line entry point.

Subcommands:

* ``stream compute``  - score a real/fake feature-file pair, JSON report.
* ``stream distort``  - apply one distortion to an array file.
* ``stream synth``    - generate a synthetic feature file.
* ``stream sweep``    - distort at a grid of intensities, CSV of scores.
* ``stream frechet``  - sliding-window Frechet baseline only.

All commands are non-interactive and exit non-zero on failure:
2 bad arguments, 3 I/O or file-format error, 4 shape mismatch,
5 numeric failure.  STREAM_THREADS caps internal parallelism.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    CorruptionError,
    FormatError,
    InsufficientDataError,
    NumericError,
    ShapeMismatchError,
    UnsupportedDtypeError,
    ValidationError,
)
from .feature_io import (
    FeatureDataset,
    RawVideoDataset,
    load_feature_dataset,
    read_array,
    validate_pair,
    write_array,
)
from .frechet import sliding_frechet
from .harness import (
    DISTORTIONS,
    RNG_NAME,
    DistortionSpec,
    SyntheticSpec,
    apply_distortion,
    generate_synthetic,
)
from .report import (
    ComputeConfig,
    MetricReport,
    compute_metric_report,
)

EXIT_OK = 0
EXIT_BAD_ARGS = 2
EXIT_IO = 3
EXIT_SHAPE = 4
EXIT_NUMERIC = 5

_IO_ERRORS = (FormatError, UnsupportedDtypeError, CorruptionError, OSError)

# Flag used to pass the intensity of each distortion kind.
_KIND_FLAGS = {
    "local_swap": "count",
    "global_swap": "count",
    "partial_reverse": "count",
    "stop_scene": "ratio",
    "fps_resample": "rate",
    "gaussian_noise": "sigma",
    "gaussian_blur": "sigma",
    "salt_pepper": "prob",
    "random_translation": "pixels",
    "luminance_shift": "factor",
    "color_jitter": "strength",
    "constant_offset": "magnitude",
    "full_reverse": None,
    "horizontal_flip": None,
}


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_dataset(path: str):
    """Load a 3-axis feature file or a 5-axis raw video file."""
    arr = read_array(path)
    if arr.ndim == 3:
        return FeatureDataset(arr, source_id=str(path))
    return RawVideoDataset(arr, source_id=str(path))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_compute_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bins", type=int, default=50, help="histogram bin count")
    p.add_argument("--k", type=int, default=5, help="k for k-NN support estimation")
    p.add_argument("--repeats", type=int, default=5, help="repeated measurements")
    p.add_argument(
        "--sample-size", type=int, default=2048, help="videos subsampled per repeat"
    )
    p.add_argument("--seed", type=int, default=0, help="subsampling seed")
    p.add_argument(
        "--skewness-mode", choices=("paper", "direct"), default="paper",
        help="closed-form or direct-moment skewness",
    )
    p.add_argument(
        "--include-zero-frequency", action="store_true",
        help="keep the mean-amplitude bin in the power-law fit (ablation)",
    )
    p.add_argument(
        "--with-frechet", action="store_true", help="also compute the Frechet baseline"
    )
    p.add_argument("--window", type=int, default=16, help="Frechet window length")
    p.add_argument("--stride", type=int, default=16, help="Frechet window stride")


def _config_from(args: argparse.Namespace, with_frechet: bool | None = None) -> ComputeConfig:
    return ComputeConfig(
        bins=args.bins,
        k=args.k,
        repeats=args.repeats,
        sample_size=args.sample_size,
        seed=args.seed,
        skewness_mode=args.skewness_mode,
        include_zero_frequency=args.include_zero_frequency,
        with_frechet=args.with_frechet if with_frechet is None else with_frechet,
        window=args.window,
        stride=args.stride,
    )


def _validate_compute_args(args: argparse.Namespace) -> None:
    if args.repeats < 1:
        raise ValidationError(f"--repeats must be >= 1, got {args.repeats}")
    if args.sample_size < 2:
        raise ValidationError(f"--sample-size must be >= 2, got {args.sample_size}")
    if args.k < 1:
        raise ValidationError(f"--k must be >= 1, got {args.k}")
    if args.bins < 2:
        raise ValidationError(f"--bins must be >= 2, got {args.bins}")


def cmd_compute(args: argparse.Namespace) -> int:
    _validate_compute_args(args)
    try:
        real = load_feature_dataset(args.real)
        fake = load_feature_dataset(args.fake)
    except _IO_ERRORS + (ValidationError,) as exc:
        return _fail(EXIT_IO, str(exc))
    validate_pair(real, fake)
    cfg = _config_from(args)
    report = compute_metric_report(
        real, fake, cfg, real_path=str(args.real), fake_path=str(args.fake)
    )
    _emit(report.to_json(), args.out)
    return EXIT_OK


def cmd_frechet(args: argparse.Namespace) -> int:
    try:
        real = load_feature_dataset(args.real)
        fake = load_feature_dataset(args.fake)
    except _IO_ERRORS + (ValidationError,) as exc:
        return _fail(EXIT_IO, str(exc))
    validate_pair(real, fake)
    value = sliding_frechet(real, fake, window=args.window, stride=args.stride)
    report = MetricReport(
        scores={"frechet": {"per_repeat": [value], "mean": value, "std": 0.0}},
        config={"window": args.window, "stride": args.stride},
        datasets={
            "real": {"path": str(args.real), "shape": list(real.features.shape)},
            "fake": {"path": str(args.fake), "shape": list(fake.features.shape)},
        },
    )
    _emit(report.to_json(), args.out)
    return EXIT_OK


def _resolve_intensity(args: argparse.Namespace) -> float:
    flag = _KIND_FLAGS[args.kind]
    if flag is None:
        return 0.0
    specific = getattr(args, flag.replace("-", "_"), None)
    candidates = [v for v in (specific, args.intensity) if v is not None]
    if not candidates:
        raise ValidationError(
            f"distortion {args.kind!r} needs --{flag} (or --intensity)"
        )
    return float(candidates[0])


def cmd_distort(args: argparse.Namespace) -> int:
    spec = DistortionSpec(
        kind=args.kind,
        intensity=_resolve_intensity(args),
        seed=args.seed,
        per_frame=args.per_frame,
    )
    try:
        ds = _load_dataset(args.input)
    except _IO_ERRORS + (ValidationError,) as exc:
        return _fail(EXIT_IO, str(exc))
    distorted = apply_distortion(ds, spec)
    if isinstance(distorted, FeatureDataset):
        # feature files are stored as float32 per the file schema
        arr = distorted.features.astype(np.float32)
    else:
        arr = distorted.frames
    write_array(arr, args.out)
    sidecar = {
        "schema": 1,
        "kind": spec.kind,
        "intensity": spec.intensity,
        "seed": spec.seed,
        "per_frame": spec.per_frame,
        "rng": RNG_NAME,
        "input": str(args.input),
    }
    Path(str(args.out) + ".json").write_text(
        json.dumps(sidecar, indent=2) + "\n", encoding="utf-8"
    )
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    spec = SyntheticSpec(
        n_videos=args.n,
        t_frames=args.t,
        d_dims=args.d,
        spectral_exponent=args.alpha,
        base_offset=args.offset,
        seed=args.seed,
    )
    ds = generate_synthetic(spec)
    write_array(ds.features, args.out)
    return EXIT_OK


def _parse_grid(text: str) -> list[float]:
    values = [v for v in (s.strip() for s in text.split(",")) if v]
    if not values:
        raise ValidationError("intensity grid is empty")
    try:
        return [float(v) for v in values]
    except ValueError as exc:
        raise ValidationError(f"bad grid value: {exc}") from None


def cmd_sweep(args: argparse.Namespace) -> int:
    _validate_compute_args(args)
    grid = _parse_grid(args.grid)
    entry = DISTORTIONS.get(args.kind)
    if entry is None:
        raise ValidationError(f"unknown distortion kind {args.kind!r}")
    if entry.space == "pixel":
        raise ValidationError(
            f"{args.kind!r} distorts raw pixels; sweep scores feature files "
            "(use `stream distort` plus an extractor instead)"
        )
    try:
        real = load_feature_dataset(args.real)
    except _IO_ERRORS + (ValidationError,) as exc:
        return _fail(EXIT_IO, str(exc))

    cfg = _config_from(args)
    rows = []
    for intensity in grid:
        spec = DistortionSpec(kind=args.kind, intensity=intensity, seed=args.seed)
        fake = apply_distortion(real, spec)
        report = compute_metric_report(real, fake, cfg, real_path=str(args.real))
        for metric, summary in report.scores.items():
            rows.append((intensity, metric, summary["mean"], summary["std"]))

    def write_rows(fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(["intensity", "metric", "mean", "stddev"])
        for intensity, metric, mean, std in rows:
            writer.writerow([f"{intensity:g}", metric, f"{mean:.10g}", f"{std:.10g}"])

    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_rows(fh)
    else:
        write_rows(sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stream", description="Spatio-temporal video-dataset metrics"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="score a real/fake feature-file pair")
    p.add_argument("--real", required=True)
    p.add_argument("--fake", required=True)
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    _add_compute_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("frechet", help="sliding-window Frechet baseline")
    p.add_argument("--real", required=True)
    p.add_argument("--fake", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--window", type=int, default=16)
    p.add_argument("--stride", type=int, default=16)
    p.set_defaults(func=cmd_frechet)

    p = sub.add_parser("distort", help="apply one distortion to an array file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--kind", required=True, choices=sorted(DISTORTIONS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--intensity", type=float, default=None, help="generic intensity")
    p.add_argument("--count", type=int, default=None, help="swaps / reversed runs")
    p.add_argument("--ratio", type=float, default=None, help="stop-scene proportion")
    p.add_argument("--rate", type=float, default=None, help="FPS factor in (0, 1]")
    p.add_argument("--sigma", type=float, default=None, help="noise/blur strength")
    p.add_argument("--prob", type=float, default=None, help="salt-and-pepper fraction")
    p.add_argument("--pixels", type=int, default=None, help="translation distance")
    p.add_argument("--factor", type=float, default=None, help="luminance compression")
    p.add_argument("--strength", type=float, default=None, help="color jitter strength")
    p.add_argument("--magnitude", type=float, default=None, help="constant offset size")
    p.add_argument(
        "--per-frame", action="store_true",
        help="draw noise per frame instead of once per video",
    )
    p.set_defaults(func=cmd_distort)

    p = sub.add_parser("synth", help="generate a synthetic feature file")
    p.add_argument("--n", type=int, required=True, help="number of videos")
    p.add_argument("--t", type=int, required=True, help="frames per video")
    p.add_argument("--d", type=int, required=True, help="feature dimensions")
    p.add_argument("--alpha", type=float, default=1.0, help="spectral exponent >= 0")
    p.add_argument("--offset", type=float, default=2.0, help="base mean offset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sweep", help="distortion sweep over an intensity grid")
    p.add_argument("--real", required=True)
    p.add_argument("--kind", required=True, choices=sorted(DISTORTIONS))
    p.add_argument("--grid", required=True, help="comma-separated intensities")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    _add_compute_flags(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        return _fail(EXIT_BAD_ARGS, str(exc))
    except _IO_ERRORS as exc:
        return _fail(EXIT_IO, str(exc))
    except (ShapeMismatchError, InsufficientDataError) as exc:
        return _fail(EXIT_SHAPE, str(exc))
    except NumericError as exc:
        return _fail(EXIT_NUMERIC, str(exc))


if __name__ == "__main__":
    sys.exit(main())
