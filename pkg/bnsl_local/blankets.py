"""Markov blanket learners: Grow-Shrink, IAMB and Interleaved IAMB."""

import logging
from typing import Dict, FrozenSet, Optional, Set

from bnsl_citest.engines import CiTest
from bnsl_data.datasets import Dataset
from bnsl_graph.graphs import canonical

from .config import BLANKET_BACKENDS, GS, IAMB, INTER_IAMB, LocalLearnConfig
from .exceptions import LocalLearnConfigError
from .search import LocalResult, TargetQueries, association_key, candidates
from .sepsets import SepsetTable

logger = logging.getLogger(__name__)


class _Blanket:
    """Mutable state of one blanket search."""

    def __init__(self, target: str, cfg: LocalLearnConfig, queries: TargetQueries):
        self.target = target
        self.cfg = cfg
        self.queries = queries
        self.members: Set[str] = set(cfg.whitelist) | set(cfg.start)
        self.separated_by: Dict[str, FrozenSet[str]] = {}

    def conditioning(self, node: str) -> FrozenSet[str]:
        return frozenset(self.members - {node})

    def dependent(self, node: str) -> bool:
        z = self.conditioning(node)
        if self.queries(node, z).independent:
            self.separated_by[node] = z
            return False
        return True

    def shrink(self, keep: Optional[str] = None) -> None:
        """Removes members independent of the target given the rest, to fixpoint."""
        changed = True
        while changed:
            changed = False
            for node in canonical(self.members - self.cfg.whitelist - {keep}):
                if not self.dependent(node):
                    self.members.discard(node)
                    changed = True

    def best_dependent(self, pool) -> Optional[str]:
        ranked = []
        for node in pool:
            if node in self.members:
                continue
            z = self.conditioning(node)
            outcome = self.queries(node, z)
            if outcome.independent:
                self.separated_by[node] = z
            else:
                ranked.append(association_key(outcome, node))
        return min(ranked)[-1] if ranked else None

    def result(self, pool) -> LocalResult:
        sepsets = SepsetTable()
        for node in pool:
            if node not in self.members and node in self.separated_by:
                sepsets.record(self.target, node, self.separated_by[node])
        return LocalResult(frozenset(self.members), sepsets)


def grow_shrink(blanket: _Blanket, pool) -> None:
    changed = True
    while changed:
        changed = False
        for node in pool:
            if node not in blanket.members and blanket.dependent(node):
                blanket.members.add(node)
                changed = True
    blanket.shrink()


def iamb(blanket: _Blanket, pool) -> None:
    while True:
        best = blanket.best_dependent(pool)
        if best is None:
            break
        blanket.members.add(best)
    blanket.shrink()


def inter_iamb(blanket: _Blanket, pool) -> None:
    log_prefix = f"Node_{blanket.target}: "
    seen = {frozenset(blanket.members)}
    while True:
        best = blanket.best_dependent(pool)
        if best is None:
            break
        blanket.members.add(best)
        blanket.shrink(keep=best)

        state = frozenset(blanket.members)
        if state in seen:
            logger.warning(
                log_prefix + "Interleaved search revisited a blanket, stopping."
            )
            break
        seen.add(state)
    blanket.shrink()


_SEARCHES = {GS: grow_shrink, IAMB: iamb, INTER_IAMB: inter_iamb}


def learn_mb(
    data: Optional[Dataset], target: str, cfg: LocalLearnConfig, test: CiTest
) -> LocalResult:
    """Candidate Markov blanket of target and the separating sets it found.

    The conditioning set of every test is the whole current blanket.
    Without data the variables are taken from the test engine.
    """
    if cfg.backend not in BLANKET_BACKENDS:
        raise LocalLearnConfigError(
            f"`{cfg.backend}` does not learn Markov blankets; "
            f"expected one of {list(BLANKET_BACKENDS)}."
        )
    variables = data.names if data is not None else test.variables
    cfg.check_target(target, variables)

    pool = candidates(target, variables, cfg)
    blanket = _Blanket(target, cfg, TargetQueries(test, target))
    _SEARCHES[cfg.backend](blanket, pool)

    result = blanket.result(pool)
    logger.debug(
        f"Node_{target}: {cfg.backend} blanket {canonical(result.nodes)}."
    )
    return result
