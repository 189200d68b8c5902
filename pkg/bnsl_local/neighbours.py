"""Parents-and-children learners: MMPC and Semi-Interleaved HITON-PC."""

import logging
from typing import Dict, FrozenSet, Optional, Set, Tuple

from bnsl_citest.engines import CiTest
from bnsl_data.datasets import Dataset
from bnsl_graph.graphs import canonical

from .config import MMPC, NEIGHBOUR_BACKENDS, SI_HITON_PC, LocalLearnConfig
from .exceptions import LocalLearnConfigError
from .search import (
    LocalResult,
    TargetQueries,
    association_key,
    candidates,
    conditioning_subsets,
)
from .sepsets import SepsetTable

logger = logging.getLogger(__name__)


def _separate(
    queries: TargetQueries,
    node: str,
    members: Set[str],
    cfg: LocalLearnConfig,
    separated_by: Dict[str, FrozenSet[str]],
) -> bool:
    z = queries.separating_set(node, members - {node}, cfg.max_condition_size)
    if z is None:
        return False
    separated_by[node] = z
    return True


def _backward(
    queries: TargetQueries,
    members: Set[str],
    cfg: LocalLearnConfig,
    separated_by: Dict[str, FrozenSet[str]],
) -> None:
    for node in canonical(members - cfg.whitelist):
        if _separate(queries, node, members, cfg, separated_by):
            members.discard(node)


def si_hiton_pc(
    queries: TargetQueries, pool, cfg: LocalLearnConfig
) -> Tuple[Set[str], Dict[str, FrozenSet[str]]]:
    members = set(cfg.whitelist) | set(cfg.start)
    separated_by = {}

    ranked = []
    for node in pool:
        if node in members:
            continue
        outcome = queries(node)
        if outcome.independent:
            separated_by[node] = frozenset()
        else:
            ranked.append(association_key(outcome, node))

    for *_, node in sorted(ranked):
        members.add(node)
        if _separate(queries, node, members, cfg, separated_by):
            members.discard(node)

    _backward(queries, members, cfg, separated_by)
    return members, separated_by


def mmpc(
    queries: TargetQueries, pool, cfg: LocalLearnConfig
) -> Tuple[Set[str], Dict[str, FrozenSet[str]]]:
    members = set(cfg.whitelist) | set(cfg.start)
    remaining = [node for node in pool if node not in members]
    separated_by = {}

    while remaining:
        ranked = []
        for node in remaining:
            weakest = None
            for z in conditioning_subsets(members, cfg.max_condition_size):
                outcome = queries(node, z)
                if outcome.independent:
                    separated_by[node] = z
                    weakest = None
                    break
                if weakest is None or association_key(outcome, node) > association_key(
                    weakest, node
                ):
                    weakest = outcome
            if weakest is not None:
                ranked.append(association_key(weakest, node))

        remaining = [node for node in remaining if node not in separated_by]
        if not ranked:
            break
        best = min(ranked)[-1]
        members.add(best)
        remaining.remove(best)

    _backward(queries, members, cfg, separated_by)
    return members, separated_by


_SEARCHES = {MMPC: mmpc, SI_HITON_PC: si_hiton_pc}


def learn_nbr(
    data: Optional[Dataset], target: str, cfg: LocalLearnConfig, test: CiTest
) -> LocalResult:
    """Candidate neighbours (parents and children) of target.

    Every candidate rejected along the way is recorded with the separating
    set that rejected it. With cfg.markov_blanket the candidates are limited
    to that blanket.
    """
    if cfg.backend not in NEIGHBOUR_BACKENDS:
        raise LocalLearnConfigError(
            f"`{cfg.backend}` does not learn neighbourhoods; "
            f"expected one of {list(NEIGHBOUR_BACKENDS)}."
        )
    variables = data.names if data is not None else test.variables
    cfg.check_target(target, variables)

    pool = candidates(target, variables, cfg)
    members, separated_by = _SEARCHES[cfg.backend](
        TargetQueries(test, target), pool, cfg
    )

    sepsets = SepsetTable()
    for node in pool:
        if node not in members and node in separated_by:
            sepsets.record(target, node, separated_by[node])
    logger.debug(f"Node_{target}: {cfg.backend} neighbours {canonical(members)}.")
    return LocalResult(frozenset(members), sepsets)
