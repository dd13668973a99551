"""Acceptance suite: one test per release criterion.

Each test prints a pass/fail line via the conftest hook.  Oracles here
are deliberately naive re-implementations (python loops, full sorts,
scipy sqrtm) kept independent of the engine's vectorized paths.
"""

import json
import time

import numpy as np
import scipy.linalg

from stream_metrics import (
    ComputeConfig,
    SyntheticSpec,
    amplitude_spectrum,
    batch_amplitude_spectra,
    compute_metric_report,
    constant_offset,
    fit_power_law,
    full_reverse,
    generate_synthetic,
    global_swap,
    knn_radii,
    local_swap,
    mean_amplitude_set,
    partial_reverse,
    sliding_frechet,
    stop_scene,
    stream_s,
    stream_t,
    write_array,
)
from stream_metrics.cli import main
from stream_metrics.frechet import GaussianFit, frechet_distance
from stream_metrics.stream_t import StreamTConfig

TREND_SHAPE = dict(n_videos=512, t_frames=16, d_dims=64)


def synth(seed, alpha=1.0, **overrides):
    params = dict(TREND_SHAPE, spectral_exponent=alpha, base_offset=2.0, seed=seed)
    params.update(overrides)
    return generate_synthetic(SyntheticSpec(**params))


def points_of(ds):
    return mean_amplitude_set(ds)


# --- criterion 1 ----------------------------------------------------------------


def test_identity_suite():
    start = time.monotonic()
    rng = np.random.default_rng(1000)
    for i in range(10):
        ds = generate_synthetic(
            SyntheticSpec(256, 16, 64, float(i % 5) / 2.0, 2.0, seed=int(rng.integers(1 << 31)))
        )
        assert stream_t(ds, ds).score == 1.0
        score = stream_s(points_of(ds), points_of(ds))
        assert score.fidelity == 1.0
        assert score.diversity == 1.0
        assert sliding_frechet(ds, ds, window=16, stride=16) <= 1e-8
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"identity suite took {elapsed:.1f}s"


# --- criterion 2 ----------------------------------------------------------------


def _dft_oracle(seq):
    t = len(seq)
    out = np.empty(t // 2 + 1)
    for i in range(t // 2 + 1):
        acc = 0j
        for k in range(t):
            acc += seq[k] * np.exp(-2j * np.pi * k * i / t)
        out[i] = abs(acc) / t
    return out


def _radii_oracle(points, k):
    out = np.empty(len(points))
    for i, p in enumerate(points):
        dists = sorted(np.sqrt(np.sum((p - q) ** 2)) for q in points)
        out[i] = dists[k]
    return out


def _stream_s_oracle(real, fake, k):
    rr = _radii_oracle(real, k)
    fr = _radii_oracle(fake, k)

    def inside(q, centers, radii):
        return any(
            np.sqrt(np.sum((q - c) ** 2)) <= r for c, r in zip(centers, radii)
        )

    fid = sum(inside(y, real, rr) for y in fake) / len(fake)
    div = sum(inside(x, fake, fr) for x in real) / len(real)
    return fid, div


def test_oracle_equivalence():
    rng = np.random.default_rng(2000)

    # (a) spectra against direct O(T^2) DFT summation
    for _ in range(100):
        t = int(rng.integers(4, 65))
        seq = rng.normal(size=t)
        ours = amplitude_spectrum(seq).amplitudes[0]
        assert np.max(np.abs(ours - _dft_oracle(seq))) <= 1e-9

    # (b) exact neighbor radii and support scores against brute force
    for n, m, d, k in ((64, 48, 4, 3), (256, 200, 8, 5)):
        real = rng.normal(size=(n, d))
        fake = rng.normal(0.4, 1.1, size=(m, d))
        assert np.array_equal(knn_radii(real, k).radii, _radii_oracle(real, k))
        score = stream_s(real, fake, k=k)
        fid, div = _stream_s_oracle(real, fake, k)
        assert score.fidelity == fid
        assert score.diversity == div

    # (c) planted power laws recovered
    for _ in range(50):
        alpha = float(rng.uniform(-1.0, 3.0))
        c = float(rng.uniform(0.05, 20.0))
        f = int(rng.integers(2, 64))
        grid = np.arange(1, f + 1, dtype=np.float64)
        fit = fit_power_law(c * grid**-alpha)
        assert abs(fit.alpha - alpha) <= 1e-9
        assert abs(fit.c - c) <= 1e-9 * c

    # (d) Frechet against the diagonal-covariance closed form
    for _ in range(25):
        d = int(rng.integers(1, 10))
        mu = rng.normal(size=(2, d))
        var = rng.uniform(0.05, 4.0, size=(2, d))
        got = frechet_distance(
            GaussianFit(mu[0], np.diag(var[0])), GaussianFit(mu[1], np.diag(var[1]))
        )
        want = np.sum((mu[0] - mu[1]) ** 2) + np.sum(
            (np.sqrt(var[0]) - np.sqrt(var[1])) ** 2
        )
        assert abs(got - want) <= 1e-8


# --- criterion 3 ----------------------------------------------------------------


def test_temporal_sensitivity_trend():
    start = time.monotonic()
    seeds = range(5)
    curves = []
    gaps = []
    for s in seeds:
        real = synth(100 + s)
        curves.append(
            [stream_t(real, local_swap(real, m, seed=200 + s)).score for m in range(8)]
        )
        # diversity contrast at an equal swap budget for both kinds
        budget = 12
        swapped_local = local_swap(real, budget, seed=200 + s)
        swapped_global = global_swap(real, budget, seed=300 + s)
        d_local = stream_s(points_of(real), points_of(swapped_local)).diversity
        d_global = stream_s(points_of(real), points_of(swapped_global)).diversity
        gaps.append(d_local - d_global)

    mean_curve = np.mean(curves, axis=0)
    assert all(mean_curve[i + 1] <= mean_curve[i] + 1e-12 for i in range(7)), mean_curve
    assert mean_curve[7] <= mean_curve[0] - 0.1
    assert float(np.mean(gaps)) >= 0.05, gaps

    elapsed = time.monotonic() - start
    assert elapsed < 300.0, f"trend suite took {elapsed:.1f}s"


# --- criterion 4 ----------------------------------------------------------------


def test_spatial_robustness():
    real = synth(11)
    fake = synth(12)
    base = stream_t(real, fake).score
    fidelities = []
    for magnitude in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0):
        shifted = constant_offset(fake, magnitude, seed=99)
        assert abs(stream_t(real, shifted).score - base) <= 1e-9
        fidelities.append(stream_s(points_of(real), points_of(shifted)).fidelity)
    assert all(
        fidelities[i + 1] <= fidelities[i] + 1e-12 for i in range(len(fidelities) - 1)
    ), fidelities
    assert fidelities[-1] <= 0.05


# --- criterion 5 ----------------------------------------------------------------


def test_stop_scene_degradation():
    real = synth(11)
    scores = []
    for ratio in (0.0, 0.25, 0.5, 0.75, 1.0):
        frozen = stop_scene(real, ratio, seed=5)
        scores.append(stream_t(real, frozen).score)
    assert all(scores[i + 1] <= scores[i] + 1e-12 for i in range(4)), scores
    assert np.isfinite(scores[-1])
    # at ratio 1.0 every positive-frequency amplitude is below the log floor
    stopped = stop_scene(real, 1.0, seed=5)
    positive = batch_amplitude_spectra(stopped)[:, :, 1:]
    assert positive.max() <= 1e-8


# --- criterion 6 ----------------------------------------------------------------


def test_reversal_invariance():
    curves = []
    for s in range(3):
        real = synth(500 + s)
        assert abs(stream_t(real, full_reverse(real)).score - 1.0) <= 1e-9
        curves.append(
            [
                stream_t(real, partial_reverse(real, m, seed=600 + s)).score
                for m in (0, 2, 4, 6, 8, 10, 12)
            ]
        )
    mean_curve = np.mean(curves, axis=0)
    assert all(
        mean_curve[i + 1] <= mean_curve[i] + 1e-12 for i in range(len(mean_curve) - 1)
    ), mean_curve


# --- criterion 7 ----------------------------------------------------------------


def test_ablation_stability():
    real = synth(21, n_videos=2048)
    fake = synth(22, n_videos=2048)

    bin_scores = [
        stream_t(real, fake, StreamTConfig(bins=b)).score for b in (50, 75, 100)
    ]
    assert max(bin_scores) - min(bin_scores) < 0.02, bin_scores

    def mean_score_at(size):
        vals = []
        for r in range(5):
            rng_r = np.random.default_rng([7, size, r, 0])
            rng_f = np.random.default_rng([7, size, r, 1])
            sub_r = real.subset(np.sort(rng_r.choice(2048, size, replace=False)))
            sub_f = fake.subset(np.sort(rng_f.choice(2048, size, replace=False)))
            vals.append(stream_t(sub_r, sub_f).score)
        return float(np.mean(vals))

    anchor = mean_score_at(2000)
    drift_500 = abs(mean_score_at(500) - anchor)
    drift_1000 = abs(mean_score_at(1000) - anchor)
    assert drift_500 >= drift_1000, (drift_500, drift_1000)


# --- criterion 8 ----------------------------------------------------------------


def _sliding_oracle(real, fake, window, stride):
    """Hand-looped window scores with an independent sqrtm-based distance."""
    t = real.features.shape[1]
    scores = []
    for s in range(0, t - window + 1, stride):
        blocks = []
        for ds in (real, fake):
            pts = np.abs(ds.features[:, s : s + window, :].astype(np.float64).mean(axis=1))
            blocks.append((pts.mean(axis=0), np.cov(pts, rowvar=False)))
        (mu_a, cov_a), (mu_b, cov_b) = blocks
        cross = np.real(scipy.linalg.sqrtm(cov_a @ cov_b))
        scores.append(
            float(np.sum((mu_a - mu_b) ** 2) + np.trace(cov_a + cov_b - 2 * cross))
        )
    return float(np.mean(scores)), len(scores)


def test_determinism_and_sliding_oracle(tmp_path):
    real = synth(70, n_videos=64, d_dims=8)
    fake = synth(71, n_videos=64, d_dims=8)
    rp, fp = tmp_path / "real.npy", tmp_path / "fake.npy"
    write_array(real.features, rp)
    write_array(fake.features, fp)

    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["compute", "--real", str(rp), "--fake", str(fp), "--repeats", "5",
            "--sample-size", "48", "--seed", "7", "--with-frechet"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    d1, d2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    assert d1["scores"] == d2["scores"]
    assert d1["config"] == d2["config"]

    # library-level determinism of the full report
    cfg = ComputeConfig(repeats=3, sample_size=48, seed=9, with_frechet=True)
    assert (
        compute_metric_report(real, fake, cfg).scores
        == compute_metric_report(real, fake, cfg).scores
    )

    long_real = synth(72, n_videos=48, t_frames=128, d_dims=8)
    long_fake = synth(73, n_videos=48, t_frames=128, d_dims=8)
    engine = sliding_frechet(long_real, long_fake, window=16, stride=16)
    oracle, n_windows = _sliding_oracle(long_real, long_fake, 16, 16)
    assert n_windows == 8
    assert abs(engine - oracle) <= 1e-8
