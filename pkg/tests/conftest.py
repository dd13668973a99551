import numpy as np
import pytest

from stream_metrics import FeatureDataset, RawVideoDataset


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[{status}] {name}")


@pytest.fixture
def small_features():
    rng = np.random.default_rng(7)
    return FeatureDataset(rng.normal(2.0, 1.0, size=(16, 8, 5)).astype(np.float32))


@pytest.fixture
def small_raw():
    rng = np.random.default_rng(8)
    frames = rng.integers(0, 256, size=(4, 6, 16, 16, 3), dtype=np.uint8)
    return RawVideoDataset(frames)
