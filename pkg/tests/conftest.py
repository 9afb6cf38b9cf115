import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "bundlelift",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("bundlelift")


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    from bundlelift import _kernels
    _kernels.warmup()
