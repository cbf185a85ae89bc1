import math

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")


def rel_err(got, want):
    if want == 0:
        return abs(got)
    return abs(got - want) / abs(want)


def within(got, want, rel, abs_tol=1e-12):
    """The accuracy contract of a converged result: max(abs_tol, rel |want|)."""
    return abs(got - want) <= max(abs_tol, rel * abs(want))


@pytest.fixture
def close():
    def check(got, want, rel):
        assert math.isfinite(got), got
        assert rel_err(got, want) <= rel, (got, want, rel_err(got, want))
    return check
