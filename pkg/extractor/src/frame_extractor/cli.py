"""`frame-extract`: turn a folder of videos into a feature or raw-frame file."""

from __future__ import annotations

import argparse
import logging
import sys

from .encoders import EncoderError
from .extract import ExtractionError, ExtractionJob, extract, extract_raw


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frame-extract",
        description="Per-frame feature extraction for the metric engine",
    )
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--videos", help="directory of video files")
    src.add_argument("--files", nargs="+", help="explicit video files")
    parser.add_argument("--t", type=int, default=16, help="frames per clip")
    parser.add_argument("--resize", type=int, default=146, help="shorter-side resize")
    parser.add_argument("--crop", type=int, default=128, help="center crop size")
    parser.add_argument(
        "--encoder", default="mean_pool",
        help="encoder id: mean_pool, swav_resnet50, resnet50",
    )
    parser.add_argument("--batch-size", type=int, default=64)
    parser.add_argument("--out", required=True, help="output .npy path")
    parser.add_argument(
        "--raw", action="store_true",
        help="write resized uint8 frames instead of encoder features",
    )
    parser.add_argument(
        "--grayscale", action="store_true", help="collapse raw frames to one channel"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    job = ExtractionJob(
        video_dir=args.videos,
        files=args.files,
        frames_per_clip=args.t,
        resize=args.resize,
        crop=args.crop,
        encoder=args.encoder,
        output_path=args.out,
        batch_size=args.batch_size,
        grayscale=args.grayscale,
    )
    try:
        out = extract_raw(job) if args.raw else extract(job)
    except (ExtractionError, EncoderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
