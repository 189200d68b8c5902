import pytest

from bnsl_data.generators import random_dag

from ..exceptions import GraphError
from ..graphs import Skeleton
from ..metrics import hamming_skeleton


def skeleton(*pairs):
    return Skeleton.from_pairs("ABC", pairs)


class TestHammingSkeleton:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            (skeleton(("A", "B")), skeleton(("A", "B")), 0),
            (skeleton(("A", "B")), skeleton(), 1),
            (skeleton(("A", "B"), ("B", "C")), skeleton(("A", "B"), ("A", "C")), 2),
            (skeleton(("B", "A")), skeleton(("A", "B")), 0),
        ],
    )
    def test_examples(self, a, b, expected):
        assert hamming_skeleton(a, b) == expected

    def test_is_a_metric(self):
        skeletons = [random_dag(8, seed).skeleton() for seed in range(6)]

        for a in skeletons:
            for b in skeletons:
                assert hamming_skeleton(a, b) == hamming_skeleton(b, a)
                assert (hamming_skeleton(a, b) == 0) == (a.edges == b.edges)
                for c in skeletons:
                    assert hamming_skeleton(a, c) <= (
                        hamming_skeleton(a, b) + hamming_skeleton(b, c)
                    )

    def test_different_nodes(self):
        with pytest.raises(GraphError, match="different nodes"):
            hamming_skeleton(skeleton(), Skeleton(("A", "B")))
