"""Spatio-temporal evaluation metrics for generated video datasets.

The engine compares two per-frame feature datasets (real vs fake) along
separated axes: STREAM-T scores temporal flow from the skewness of
fitted spectral power laws, STREAM-F/STREAM-D score fidelity/diversity
from k-NN supports of mean-amplitude features, and a feature-space
Frechet distance is included as a baseline.  A synthetic-data and
distortion harness reproduces the standard degradation protocols.
"""

__version__ = "0.1.0"

from .errors import (
    CorruptionError,
    FormatError,
    InsufficientDataError,
    NumericError,
    ShapeMismatchError,
    SmallSampleWarning,
    StreamMetricsError,
    UnsupportedDtypeError,
    ValidationError,
)
from .feature_io import (
    DatasetManifest,
    FeatureDataset,
    RawVideoDataset,
    load_feature_dataset,
    load_manifest,
    load_raw_dataset,
    read_array,
    validate_pair,
    write_array,
)
from .frechet import GaussianFit, fit_gaussian, frechet_distance, sliding_frechet
from .harness import (
    DISTORTIONS,
    DistortionSpec,
    SyntheticSpec,
    apply_distortion,
    color_jitter,
    constant_offset,
    fps_resample,
    full_reverse,
    gaussian_blur,
    gaussian_noise,
    generate_synthetic,
    global_swap,
    horizontal_flip,
    local_swap,
    luminance_shift,
    partial_reverse,
    random_translation,
    salt_pepper,
    stop_scene,
)
from .powerlaw import (
    PowerLawFit,
    SkewnessTable,
    fit_power_law,
    normalization_constant,
    skewness_direct,
    skewness_paper,
    skewness_table,
)
from .report import ComputeConfig, MetricReport, compute_metric_report
from .spectral import (
    AmplitudeSpectrum,
    MeanAmplitudeSet,
    amplitude_spectrum,
    batch_amplitude_spectra,
    mean_amplitude_set,
)
from .stream_s import (
    StreamSScore,
    SupportEstimate,
    knn_radii,
    membership,
    pairwise_distances,
    stream_s,
)
from .stream_t import (
    HistogramPair,
    StreamTConfig,
    StreamTScore,
    build_histograms,
    histogram_correlation,
    stream_t,
)
