import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "k3picard",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("k3picard")

LONG = os.environ.get("K3PICARD_LONG") == "1"


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="long-running; set K3PICARD_LONG=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
