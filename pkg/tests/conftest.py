import numpy as np
import pytest

from witnessph.embed import DistanceMatrix, LandmarkSet, PointCloud, distances

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def cloud_from(points) -> PointCloud:
    pts = np.asarray(points, dtype=float)
    return PointCloud(pts, np.arange(pts.shape[0]))


def random_instance(rng: np.random.Generator, max_witnesses=50, max_landmarks=10, max_ambient=3):
    """Random witnesses in the unit cube with a random landmark subset."""
    n_l = int(rng.integers(3, max_landmarks + 1))
    n_w = int(rng.integers(n_l, max_witnesses + 1))
    dim = int(rng.integers(1, max_ambient + 1))
    cloud = cloud_from(rng.random((n_w, dim)))
    lm = LandmarkSet(np.sort(rng.choice(n_w, n_l, replace=False)))
    return cloud, distances(cloud, lm)


def matrix(values, landmark_columns=None) -> DistanceMatrix:
    vals = np.asarray(values, dtype=float)
    cols = np.arange(vals.shape[0]) if landmark_columns is None else np.asarray(landmark_columns)
    return DistanceMatrix(vals, cols)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def three_landmarks():
    """Landmarks (0,0), (1,0), (0,1) plus an extra witness at (0.4, 0)."""
    cloud = cloud_from([[0, 0], [1, 0], [0, 1], [0.4, 0]])
    return cloud, distances(cloud, LandmarkSet(np.array([0, 1, 2])))
