"""Shared session fixtures: the expensive tables are built exactly once."""

import pytest

import spcircuits as sp

# Exact count tables reproduced from the published reference data
# (used as frozen expectations across test modules).
TOTALS_1_TO_12 = [1, 2, 4, 10, 24, 66, 180, 522, 1532, 4624, 14136, 43930]
TOTAL_21 = 1696305728

MEANS_3DP = {
    1: 1.000, 2: 1.250, 3: 1.375, 4: 1.350, 5: 1.357, 6: 1.323, 7: 1.313,
    8: 1.298, 9: 1.290, 10: 1.283, 11: 1.278, 12: 1.274, 13: 1.272,
    14: 1.269, 15: 1.267, 16: 1.266, 17: 1.264, 18: 1.263, 19: 1.262,
    20: 1.261, 21: 1.261,
}


@pytest.fixture(scope="session")
def counts60():
    return sp.appearance_table(60, sp.count_table(60))


@pytest.fixture(scope="session")
def counts2500():
    return sp.count_table(2500)


@pytest.fixture(scope="session")
def dists13(counts60):
    return sp.distributions(13, counts60)


@pytest.fixture(scope="session")
def enumerated():
    """All circuits for n = 1..10, keyed by n."""
    return {n: sp.enumerate_circuits(n) for n in range(1, 11)}


@pytest.fixture(scope="session")
def float21():
    return sp.float_distributions(21)


@pytest.fixture(scope="session")
def root_fit(counts2500):
    return sp.estimate_d_root(600, 256, counts2500)
