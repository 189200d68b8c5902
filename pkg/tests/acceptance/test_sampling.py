import numpy as np
import pytest

from bnsl_data.networks import sample

from tests.acceptance.conftest import (
    exact_marginal,
    random_small_bn,
    sprinkler_bn,
    three_level_chain_bn,
    within_three_sigma,
)

N = 50000
SEEDS = range(100)


@pytest.mark.slow
class TestSamplingFidelity:
    @pytest.mark.parametrize(
        "bn, name",
        [
            (sprinkler_bn(), "WetGrass"),
            (three_level_chain_bn(), "C"),
            (random_small_bn(), "V4"),
        ],
    )
    def test_first_level_marginal(self, bn, name):
        probability = exact_marginal(bn, name)[0]

        passed = 0
        for seed in SEEDS:
            frequency = np.mean(sample(bn, N, seed).column(name) == 0)
            passed += within_three_sigma(frequency, probability, N)

        assert passed >= 99
