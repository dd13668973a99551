import numpy as np
import pytest

from stream_metrics import (
    InsufficientDataError,
    ShapeMismatchError,
    knn_radii,
    membership,
    pairwise_distances,
    stream_s,
)


def radii_oracle(points, k):
    """Full-sort O(N^2) k-th neighbor distances, self excluded."""
    n = len(points)
    out = np.empty(n)
    for i in range(n):
        dists = []
        for j in range(n):
            d = points[i] - points[j]
            dists.append(np.sqrt(np.sum(d * d)))
        dists.sort()
        out[i] = dists[k]  # index 0 is the self distance 0.0
    return out


def scores_oracle(real, fake, k):
    """O(N*M*N) membership loops over explicit sphere tests."""
    rr = radii_oracle(real, k)
    fr = radii_oracle(fake, k)

    def inside(q, centers, radii):
        for c, r in zip(centers, radii):
            d = q - c
            if np.sqrt(np.sum(d * d)) <= r:
                return True
        return False

    fid = sum(inside(y, real, rr) for y in fake) / len(fake)
    div = sum(inside(x, fake, fr) for x in real) / len(real)
    return fid, div


def test_hand_radii_k1():
    pts = np.array([[0.0], [1.0], [3.0]])
    est = knn_radii(pts, k=1)
    assert np.allclose(est.radii, [1.0, 1.0, 2.0])


def test_hand_radii_k2():
    pts = np.array([[0.0], [1.0], [3.0]])
    est = knn_radii(pts, k=2)
    assert np.array_equal(est.radii, radii_oracle(pts, 2))
    assert np.allclose(est.radii, [3.0, 2.0, 3.0])


def test_radii_match_sort_oracle_exactly():
    rng = np.random.default_rng(21)
    for n, d, k in ((20, 3, 1), (64, 8, 5), (128, 2, 7)):
        pts = rng.normal(size=(n, d))
        est = knn_radii(pts, k=k)
        assert np.array_equal(est.radii, radii_oracle(pts, k))


def test_membership_examples():
    support = knn_radii(np.array([[0.0], [1.0], [3.0]]), k=1)
    assert membership(np.array([2.5]), support) is True
    assert membership(np.array([10.0]), support) is False
    assert membership(np.array([3.0]), support) is True  # a center itself


def test_membership_dimension_guard():
    support = knn_radii(np.random.default_rng(0).normal(size=(6, 3)), k=1)
    with pytest.raises(ShapeMismatchError):
        membership(np.zeros(2), support)


def test_duplicate_points_zero_radius_still_contains_coincident():
    pts = np.array([[0.0, 0.0]] * 4 + [[5.0, 5.0]] * 4)
    est = knn_radii(pts, k=3)
    assert est.radii[0] == 0.0
    assert membership(np.array([0.0, 0.0]), est) is True


def test_identical_sets_score_one():
    pts = np.random.default_rng(22).normal(size=(32, 4))
    score = stream_s(pts, pts.copy(), k=5)
    assert score.fidelity == 1.0
    assert score.diversity == 1.0


def test_far_translation_scores_zero():
    rng = np.random.default_rng(23)
    real = rng.normal(size=(32, 4))
    fake = real + 1e6
    score = stream_s(real, fake, k=5)
    assert score.fidelity == 0.0
    assert score.diversity == 0.0


def test_mode_collapse_high_fidelity_low_diversity():
    rng = np.random.default_rng(24)
    real = rng.normal(size=(64, 6))
    collapsed = np.tile(real[0], (64, 1))
    score = stream_s(real, collapsed, k=5)
    oracle_fid, oracle_div = scores_oracle(real, collapsed, 5)
    assert score.fidelity == oracle_fid == 1.0
    assert score.diversity == oracle_div
    assert score.diversity < 0.5


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(25)
    for n, m, d in ((40, 30, 3), (64, 64, 6)):
        real = rng.normal(size=(n, d))
        fake = rng.normal(0.5, 1.2, size=(m, d))
        score = stream_s(real, fake, k=5)
        fid, div = scores_oracle(real, fake, 5)
        assert score.fidelity == fid
        assert score.diversity == div


def test_rigid_transform_invariance():
    rng = np.random.default_rng(26)
    real = rng.normal(size=(48, 5))
    fake = rng.normal(0.3, 1.0, size=(40, 5))
    base = stream_s(real, fake, k=5)
    q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
    shift = rng.normal(size=5) * 3.0
    moved = stream_s(real @ q + shift, fake @ q + shift, k=5)
    assert abs(moved.fidelity - base.fidelity) <= 1e-9
    assert abs(moved.diversity - base.diversity) <= 1e-9


def test_fidelity_diversity_are_transposes():
    rng = np.random.default_rng(27)
    a = rng.normal(size=(30, 4))
    b = rng.normal(size=(26, 4))
    fwd = stream_s(a, b, k=3)
    rev = stream_s(b, a, k=3)
    assert fwd.fidelity == rev.diversity
    assert fwd.diversity == rev.fidelity


def test_insufficient_points_guard():
    pts = np.zeros((5, 2))
    with pytest.raises(InsufficientDataError):
        knn_radii(pts, k=5)
    with pytest.raises(ShapeMismatchError):
        stream_s(np.zeros((8, 2)), np.zeros((8, 3)), k=1)


def test_pairwise_distance_layout():
    a = np.array([[0.0, 0.0], [3.0, 4.0]])
    b = np.array([[0.0, 0.0]])
    d = pairwise_distances(a, b)
    assert d.shape == (2, 1)
    assert np.allclose(d[:, 0], [0.0, 5.0])


def test_growing_uniform_offset_drives_both_scores_to_zero():
    from stream_metrics import (
        SyntheticSpec,
        constant_offset,
        generate_synthetic,
        mean_amplitude_set,
    )

    real = generate_synthetic(SyntheticSpec(128, 16, 16, 1.0, 2.0, seed=70))
    fake = generate_synthetic(SyntheticSpec(128, 16, 16, 1.0, 2.0, seed=71))
    fids, divs = [], []
    for magnitude in (0.0, 2.0, 8.0, 32.0, 128.0):
        shifted = constant_offset(fake, magnitude, seed=72)
        score = stream_s(mean_amplitude_set(real), mean_amplitude_set(shifted), k=5)
        fids.append(score.fidelity)
        divs.append(score.diversity)
    assert fids[0] > 0.5 and divs[0] > 0.5
    assert all(np.diff(fids) <= 1e-12) and all(np.diff(divs) <= 1e-12)
    assert fids[-1] <= 0.05 and divs[-1] <= 0.05
