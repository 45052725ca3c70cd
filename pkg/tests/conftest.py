import numpy as np
import pytest

from fairsic import (
    DmcChannel,
    GaussianChannel,
    RankFunctionSet,
    TabulatedRanks,
)

# Worked two-user fixture used throughout: receiver 1 hears user 2 at twice
# its own user's power, receiver 2 hears user 1 only faintly.
TWO_USER_GAINS = [[1.0, 2.0], [0.1, 1.0]]

# Frozen oracle values (direct formula evaluation, see README worked example).
LOG2_3 = 1.584962500721156  # log2(1 + 2/1)
LOG2_1_1 = 0.13750352374993502  # log2(1 + 0.1/1)
LOG2_21_11 = 0.932885804141463  # log2(21/11), the fixture's min rate
LOG2_4_3 = 0.41503749927884376  # log2(1 + 1/3)


@pytest.fixture
def two_user_channel() -> GaussianChannel:
    return GaussianChannel(
        np.array(TWO_USER_GAINS), np.array([1.0, 1.0]), np.array([1.0, 1.0])
    )


@pytest.fixture
def two_user_ranks(two_user_channel) -> RankFunctionSet:
    return RankFunctionSet.for_channel(two_user_channel)


@pytest.fixture
def single_user_ranks() -> RankFunctionSet:
    channel = GaussianChannel(np.array([[1.0]]), np.array([1.0]), np.array([1.0]))
    return RankFunctionSet.for_channel(channel)


@pytest.fixture
def xor_dmc_channel() -> DmcChannel:
    """Receiver 1 sees the XOR of both binary inputs, receiver 2 sees input 2."""
    uniform = np.array([0.5, 0.5])
    xor_rows = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    own_rows = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    return DmcChannel((uniform, uniform), (xor_rows, own_rows))


def tabulated_from_values(values_per_receiver) -> TabulatedRanks:
    """Build a K=2 tabulated backend from (empty, {1}, {2}, {1,2}) values."""
    subsets = [[], [1], [2], [1, 2]]
    tables = [
        list(zip(subsets, values)) for values in values_per_receiver
    ]
    return TabulatedRanks.from_subsets(2, tables)
