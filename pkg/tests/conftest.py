"""Shared fixtures and the acceptance-criteria summary hook."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# (label, passed, one-line detail) per acceptance criterion, printed as a
# summary block at the end of the run.
ACCEPTANCE_LOG: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def check_criterion():
    """Record one acceptance-criterion outcome, then assert it."""

    def check(label: str, ok: bool, detail: str) -> None:
        ACCEPTANCE_LOG.append((label, bool(ok), detail))
        assert ok, f"criterion {label}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_LOG:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{label:>3}] {status}  {detail}")


@pytest.fixture
def rng():
    """Fresh fixed-seed generator for tests that just need arbitrary data."""
    return np.random.default_rng(20260823)


@pytest.fixture
def gaussian_sample():
    """Factory for seeded H0 samples."""
    from stiefel_mvn import Sample

    def make(n_obs: int, dim: int, seed: int = 0) -> "Sample":
        gen = np.random.default_rng(np.random.SeedSequence([999, seed]))
        return Sample(gen.standard_normal((n_obs, dim)))

    return make
