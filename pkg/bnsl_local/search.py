"""Building blocks shared by the blanket and neighbour backends."""

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, NamedTuple, Optional, Tuple

from bnsl_citest.engines import CiTest
from bnsl_citest.outcomes import TestOutcome
from bnsl_graph.graphs import canonical

from .config import LocalLearnConfig
from .sepsets import SepsetTable


class LocalResult(NamedTuple):
    nodes: FrozenSet[str]
    sepsets: SepsetTable


def conditioning_subsets(
    pool: Iterable[str], max_size: Optional[int] = None
) -> Iterator[FrozenSet[str]]:
    """Subsets of pool by increasing size, lexicographic by name within a size."""
    pool = canonical(pool)
    largest = len(pool) if max_size is None else min(max_size, len(pool))
    for size in range(largest + 1):
        for members in combinations(pool, size):
            yield frozenset(members)


def candidates(
    target: str, variables: Iterable[str], cfg: LocalLearnConfig
) -> Tuple[str, ...]:
    """Nodes that may be tested against target, in canonical order."""
    excluded = cfg.blacklist | cfg.whitelist | {target}
    pool = [name for name in variables if name not in excluded]
    if cfg.markov_blanket is not None:
        pool = [name for name in pool if name in cfg.markov_blanket]
    return tuple(canonical(pool))


def association_key(outcome: TestOutcome, name: str):
    """Stronger association sorts first: smaller p, larger statistic, then name."""
    return outcome.p_value, -outcome.statistic, name


class TargetQueries:
    """Tests of one target against other nodes, each query run at most once.

    The memo lives as long as one learner invocation.
    """

    def __init__(self, test: CiTest, target: str):
        self.test = test
        self.target = target
        self._memo: Dict[Tuple[str, FrozenSet[str]], TestOutcome] = {}

    def __call__(self, node: str, z: Iterable[str] = ()) -> TestOutcome:
        key = (node, frozenset(z))
        if key not in self._memo:
            self._memo[key] = self.test.test(self.target, node, key[1])
        return self._memo[key]

    def separating_set(
        self, node: str, pool: Iterable[str], max_size: Optional[int] = None
    ) -> Optional[FrozenSet[str]]:
        """First subset of pool rendering node independent of the target."""
        for z in conditioning_subsets(pool, max_size):
            if self(node, z).independent:
                return z
        return None
