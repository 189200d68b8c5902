import pytest

from ..outcomes import DEGENERATE, TestCounter, TestOutcome


class TestTestOutcome:
    @pytest.mark.parametrize(
        "p_value, expected", [(-1e-17, 0.0), (1.0000000001, 1.0), (0.3, 0.3)]
    )
    def test_decide_clamps_p_value(self, p_value, expected):
        assert TestOutcome.decide(1.0, 1, p_value, 0.01).p_value == expected

    @pytest.mark.parametrize("p_value, independent", [(0.01, False), (0.0101, True)])
    def test_independence_means_p_above_alpha(self, p_value, independent):
        assert TestOutcome.decide(1.0, 1, p_value, 0.01).independent is independent

    def test_vacuous_outcome(self):
        outcome = TestOutcome.vacuous(-1)

        assert outcome.independent
        assert outcome.p_value == 1.0
        assert outcome.dof == -1
        assert outcome.flags == frozenset({DEGENERATE})


class TestTestCounter:
    def test_counts_and_resets(self):
        counter = TestCounter()
        for _ in range(3):
            counter.increment()

        assert counter.count == 3
        counter.reset()
        assert counter.count == 0
