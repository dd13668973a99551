import cv2
import numpy as np
import pytest


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[{status}] {name}")


def write_counter_clip(path, n_frames=24, size=64, base=20, step=4):
    """A clip whose frame t is a flat image of brightness base + t*step."""
    writer = cv2.VideoWriter(
        str(path), cv2.VideoWriter_fourcc(*"MJPG"), 10, (size, size)
    )
    assert writer.isOpened()
    for t in range(n_frames):
        value = min(255, base + t * step)
        writer.write(np.full((size, size, 3), value, dtype=np.uint8))
    writer.release()


@pytest.fixture
def clip_dir(tmp_path):
    """Three decodable counter clips with well-separated brightness bases."""
    videos = tmp_path / "videos"
    videos.mkdir()
    # written out of name order on purpose; rows must follow sorted names
    write_counter_clip(videos / "c_last.avi", base=160)
    write_counter_clip(videos / "a_first.avi", base=20)
    write_counter_clip(videos / "b_mid.avi", base=90)
    return videos
