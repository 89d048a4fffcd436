import numpy as np
import pytest

from multitunnel import ScatterParams, single_barrier

# Reference values at epsilon = 1/2, width = 1 (30-digit evaluation of the
# textbook rectangular-barrier formulas, independent of the package code)
T2_HALF = 0.62929027363485366749
R2_HALF = 0.37070972636514633251
DPHI_DK_HALF = 1.7221143431610952877
PARTICLE_T_HALF = 0.45909813108542549924


@pytest.fixture
def half():
    return ScatterParams(epsilon=0.5, width=1.0)


@pytest.fixture
def half_amps(half):
    return single_barrier(half)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
