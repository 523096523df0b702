import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

PHI_GRID = [k * (math.pi / 2) / 40 for k in range(41)]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
