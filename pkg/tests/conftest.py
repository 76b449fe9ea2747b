import numpy as np
import pytest

from swih import FeatureImage, GrayImage

EXAMPLE = [[10, 200, 10], [200, 10, 200], [10, 200, 10]]

_acceptance = []


@pytest.fixture
def example_image():
    return GrayImage(np.array(EXAMPLE, dtype=np.uint8))


@pytest.fixture
def rng():
    return np.random.default_rng(20161015)


def random_features(rng, width, height, bins):
    return FeatureImage(rng.integers(0, bins, size=(height, width)), bins)


@pytest.fixture
def acceptance_log():
    return _acceptance


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for line in _acceptance:
        terminalreporter.write_line(line)
