import numpy as np
import pytest


@pytest.fixture
def reflection_3x3():
    """Dense 3x3 reflection about (2/3, 1/3, 2/3); the motivating example."""
    return np.array([[1, -4, -8], [-4, 7, -4], [-8, -4, 1]], dtype=float) / 9.0
