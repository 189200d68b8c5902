"""Orientation of the learned skeleton: v-structures, then Meek's rules."""

import logging
from typing import List, NamedTuple, Optional, Tuple

from bnsl_citest.engines import CiTest
from bnsl_data.datasets import Dataset
from bnsl_graph.equivalence import WorkingPdag, apply_meek_rules
from bnsl_graph.exceptions import GraphError
from bnsl_graph.graphs import Pdag, Skeleton, VStructure, canonical
from bnsl_local.search import TargetQueries
from bnsl_local.sepsets import Sepset, SepsetTable
from bnsl_parallel.executor import ParallelExecutor, PhaseOutcome

from .exceptions import LearnConfigError

logger = logging.getLogger(__name__)

V_STRUCTURES = "v-structures"

__all__ = [
    "VStructureSearch",
    "apply_meek_rules",
    "find_sepset",
    "orient_v_structures",
    "unshielded_pairs",
]


class VStructureSearch(NamedTuple):
    pdag: Pdag
    v_structures: Tuple[VStructure, ...]
    conflicts: int
    unresolved: Tuple[Tuple[str, str], ...]
    phase: Optional[PhaseOutcome]


def unshielded_pairs(skeleton: Skeleton) -> List[Tuple[str, str]]:
    """Non-adjacent pairs with at least one common neighbour, canonical order."""
    pairs = []
    nodes = canonical(skeleton.nodes)
    for index, a in enumerate(nodes):
        for b in nodes[index + 1 :]:
            common = skeleton.neighbours(a) & skeleton.neighbours(b)
            if common and not skeleton.adjacent(a, b):
                pairs.append((a, b))
    return pairs


def find_sepset(
    skeleton: Skeleton,
    a: str,
    b: str,
    test: CiTest,
    max_condition_size: Optional[int] = None,
) -> Sepset:
    """Searches subsets of N(a) - b, then of N(b) - a, by increasing size."""
    queries = TargetQueries(test, a)
    for pool in (skeleton.neighbours(a) - {b}, skeleton.neighbours(b) - {a}):
        found = queries.separating_set(b, pool, max_condition_size)
        if found is not None:
            return found
    return None


def _colliders(
    skeleton: Skeleton,
    sepsets: SepsetTable,
    pair: Tuple[str, str],
    test: CiTest,
    max_condition_size: Optional[int],
) -> Tuple[Sepset, Tuple[VStructure, ...]]:
    a, b = pair
    sepset = sepsets.get(a, b)
    if sepset is None:
        sepset = find_sepset(skeleton, a, b, test, max_condition_size)
    if sepset is None:
        return None, ()
    common = skeleton.neighbours(a) & skeleton.neighbours(b)
    return sepset, tuple(
        VStructure(a, collider, b) for collider in canonical(common - sepset)
    )


def _consistent(state: WorkingPdag, parent: str, child: str) -> bool:
    if child in state.children[parent]:
        return True
    return child in state.undirected[parent] and not state.creates_cycle(parent, child)


def orient_v_structures(
    skeleton: Skeleton,
    sepsets: SepsetTable,
    data: Optional[Dataset],
    test: CiTest,
    executor: Optional[ParallelExecutor] = None,
    max_condition_size: Optional[int] = None,
) -> VStructureSearch:
    """Orients a -> k <- b for every unshielded triple with k outside S(a, b).

    Pairs without a recorded separating set get one searched on demand; when
    none exists the pair is reported as unresolved and orients nothing.
    Candidates are applied in canonical order and the first one wins: a later
    v-structure that would reverse an arc or close a cycle is counted as a
    conflict and skipped.
    """
    variables = data.names if data is not None else test.variables
    if set(variables) != set(skeleton.nodes):
        raise LearnConfigError("The skeleton and the data cover different variables.")
    for pair, _ in sepsets.items():
        if pair in skeleton.edges:
            raise LearnConfigError(
                f"Adjacent pair {canonical(pair)} has a separating set."
            )

    executor = executor or ParallelExecutor(1)
    pairs = unshielded_pairs(skeleton)

    def task(pair, engine):
        return _colliders(skeleton, sepsets, pair, engine, max_condition_size)

    phase = executor.run_phase(V_STRUCTURES, pairs, task, test)

    candidates = []
    unresolved = []
    for pair, (sepset, found) in zip(pairs, phase.results):
        if sepset is None:
            unresolved.append(pair)
            logger.warning(
                f"Pair_{pair[0]}_{pair[1]}: no separating set found, "
                "no v-structure oriented."
            )
        candidates.extend(found)

    state = WorkingPdag(Pdag.from_skeleton(skeleton))
    applied, conflicts = [], 0
    for v_structure in sorted(set(candidates)):
        (left, collider), (right, _) = v_structure.arcs
        if _consistent(state, left, collider) and _consistent(state, right, collider):
            state.orient(left, collider)
            state.orient(right, collider)
            applied.append(v_structure)
        else:
            conflicts += 1
            logger.warning(
                f"VStructure_{left}_{collider}_{right}: conflicts with an earlier "
                "orientation, skipped."
            )

    try:
        state.check_acyclic()
    except GraphError as exc:
        raise LearnConfigError(str(exc)) from exc

    return VStructureSearch(
        state.to_pdag(), tuple(applied), conflicts, tuple(unresolved), phase
    )
