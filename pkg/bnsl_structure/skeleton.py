"""Skeleton learning: blanket phase, neighbour phase and their symmetry corrections.

Without backtracking every node is learned on its own and the result does not
depend on the column order. With backtracking nodes are learned in the order
the columns are stored, not in name order, so reversing the columns can change
the skeleton; that difference is what the order experiment measures.
"""

import logging
import time
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from bnsl_citest.engines import CiTest, build_test
from bnsl_data.datasets import Dataset
from bnsl_graph.graphs import Skeleton, canonical, edge
from bnsl_local.blankets import learn_mb
from bnsl_local.config import LocalLearnConfig
from bnsl_local.neighbours import learn_nbr
from bnsl_local.search import LocalResult, TargetQueries
from bnsl_local.sepsets import SepsetTable
from bnsl_parallel.executor import ParallelExecutor, PhaseOutcome, WorkerReport

from .config import NONE, START_SET, GlobalLearnConfig

logger = logging.getLogger(__name__)

MARKOV_BLANKET = "markov-blanket"
NEIGHBOURS = "neighbours"

Learner = Callable[[str, LocalLearnConfig, CiTest], LocalResult]


class SkeletonResult(NamedTuple):
    skeleton: Skeleton
    sepsets: SepsetTable
    phases: Tuple[PhaseOutcome, ...]


def blanket_neighbours(
    target: str,
    blankets: Mapping[str, FrozenSet[str]],
    cfg: LocalLearnConfig,
    test: CiTest,
) -> LocalResult:
    """Neighbours of target among its (symmetric) Markov blanket.

    A blanket member is dropped when some subset of the smaller of the two
    blankets, and then of the larger one, separates it from target. Whitelisted
    members are accepted and blacklisted ones skipped without testing; both
    may still appear in conditioning sets.
    """
    queries = TargetQueries(test, target)
    members = set(cfg.whitelist & blankets[target])
    sepsets = SepsetTable()

    for node in canonical(blankets[target] - cfg.whitelist - cfg.blacklist):
        own = blankets[target] - {node}
        other = blankets[node] - {target}
        z = None
        for pool in sorted((own, other), key=len):
            z = queries.separating_set(node, pool, cfg.max_condition_size)
            if z is not None:
                break
        if z is None:
            members.add(node)
        else:
            sepsets.record(target, node, z)

    return LocalResult(frozenset(members), sepsets)


def symmetric_sets(
    found: Mapping[str, LocalResult], phase: str
) -> Dict[str, FrozenSet[str]]:
    """Keeps y in the set of x only when x is also in the set of y."""
    corrected = {
        node: frozenset(other for other in result.nodes if node in found[other].nodes)
        for node, result in found.items()
    }
    dropped = sum(len(found[node].nodes - corrected[node]) for node in found)
    if dropped:
        logger.warning(
            f"Phase_{phase}: dropped {dropped} asymmetric candidate(s) "
            "as false positives."
        )
    return corrected


def merged_sepsets(found: Mapping[str, LocalResult]) -> SepsetTable:
    """Union of the per-node fragments; the canonically first node wins a pair."""
    table = SepsetTable()
    for node in canonical(found):
        table.merge(found[node].sepsets)
    return table


def _backtracking_phase(
    name: str,
    variables: Sequence[str],
    cfg: GlobalLearnConfig,
    test: CiTest,
    learn: Learner,
) -> PhaseOutcome:
    """Learns the nodes one after the other in column order.

    Nodes already learned seed (start-set) or fix (legacy) the candidate set
    of the later ones and exclude the later ones they rejected.
    """
    engine = test.spawn()
    started = time.perf_counter()
    found: Dict[str, LocalResult] = {}
    for position, node in enumerate(variables):
        earlier = variables[:position]
        accepted = frozenset(x for x in earlier if node in found[x].nodes)
        rejected = frozenset(earlier) - accepted
        if cfg.backtracking == START_SET:
            local = cfg.local_config(start=accepted, blacklist=rejected)
        else:
            local = cfg.local_config(whitelist=accepted, blacklist=rejected)
        found[node] = learn(node, local, engine)
    seconds = time.perf_counter() - started

    items = tuple(canonical(variables))
    results = tuple(found[node] for node in items)
    report = WorkerReport(0, tuple(zip(items, results)), engine.counter.count)
    logger.info(
        f"Phase_{name}: {len(items)} nodes learned with {cfg.backtracking} "
        f"backtracking in {seconds:.3f}s, {report.test_count} tests."
    )
    return PhaseOutcome(name, items, results, (report,), seconds)


def _learn_phase(
    name: str,
    variables: Sequence[str],
    cfg: GlobalLearnConfig,
    executor: ParallelExecutor,
    test: CiTest,
    learn: Learner,
) -> PhaseOutcome:
    if cfg.backtracking == NONE:
        local = cfg.local_config()

        def task(node, engine):
            return learn(node, local, engine)

        return executor.run_phase(name, canonical(variables), task, test)
    return _backtracking_phase(name, variables, cfg, test, learn)


def learn_skeleton(
    data: Optional[Dataset],
    cfg: GlobalLearnConfig,
    executor: Optional[ParallelExecutor] = None,
    test: Optional[CiTest] = None,
) -> SkeletonResult:
    """Undirected skeleton and the separating sets found while learning it.

    Blanket algorithms first learn every Markov blanket and restrict the
    neighbour search to the corrected blankets; neighbour algorithms skip that
    phase. Both candidate sets are corrected by intersection.
    """
    if test is None:
        test = build_test(cfg.test, data, cfg.alpha)
    variables = tuple(data.names if data is not None else test.variables)
    executor = executor or cfg.executor()
    cfg.check_executor(executor)

    phases = []
    if cfg.uses_blankets:
        blanket_phase = _learn_phase(
            MARKOV_BLANKET,
            variables,
            cfg,
            executor,
            test,
            lambda node, local, engine: learn_mb(None, node, local, engine),
        )
        phases.append(blanket_phase)
        blanket_found = blanket_phase.as_mapping()
        blankets = symmetric_sets(blanket_found, MARKOV_BLANKET)
        blanket_sepsets = merged_sepsets(blanket_found)

        def learn_neighbours(node, local, engine):
            return blanket_neighbours(node, blankets, local, engine)

    else:
        blanket_sepsets = SepsetTable()

        def learn_neighbours(node, local, engine):
            return learn_nbr(None, node, local, engine)

    neighbour_phase = _learn_phase(
        NEIGHBOURS, variables, cfg, executor, test, learn_neighbours
    )
    phases.append(neighbour_phase)
    neighbour_found = neighbour_phase.as_mapping()
    neighbours = symmetric_sets(neighbour_found, NEIGHBOURS)

    skeleton = Skeleton(
        variables,
        frozenset(
            edge(node, other) for node in neighbours for other in neighbours[node]
        ),
    )
    sepsets = merged_sepsets(neighbour_found)
    sepsets.merge(blanket_sepsets)
    sepsets = SepsetTable(
        {pair: sepset for pair, sepset in sepsets.items() if pair not in skeleton.edges}
    )

    logger.info(
        f"Skeleton: {len(skeleton.edges)} edges over {len(variables)} nodes, "
        f"{sum(phase.total_tests for phase in phases)} tests."
    )
    return SkeletonResult(skeleton, sepsets, tuple(phases))
