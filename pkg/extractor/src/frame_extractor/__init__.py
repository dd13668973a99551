"""Video -> per-frame feature extraction for the metric engine."""

__version__ = "0.1.0"

from .decode import DecodeError, decode_video, list_videos, subsample_frames
from .encoders import EncoderError, MeanPoolEncoder, load_encoder
from .extract import ExtractionError, ExtractionJob, extract, extract_raw
